#pragma once

#include <string_view>
#include <vector>

#include "nlhive/poly.hpp"

namespace nlhive {

/// num/den, not reduced. Two of these are equal iff num1*den2 == num2*den1.
struct RationalFunction {
    QPoly num{1};
    QPoly den{1};
};

/// Parses formula strings as they are written in tables:
/// "(t+2)(14t^2+23t+12)/24", "(3w^2+3w+1)/((1-w)^3(1-w^2))", "1/(1-w)".
/// One variable, integer literals, + - * / ^ (nonnegative integer exponent),
/// parentheses and implicit multiplication. Throws ParseError.
RationalFunction parse_rational_function(std::string_view text, char var);

/// As above, but the denominator must be a nonzero constant.
QPoly parse_polynomial(std::string_view text, char var);

bool same_function(const RationalFunction& a, const RationalFunction& b);

/// Taylor coefficients of w^0..w^t_max at w = 0. Throws ParseError when the
/// denominator vanishes there.
std::vector<mpq_class> power_series(const RationalFunction& f, int t_max);

}  // namespace nlhive
