#include "nlhive/poly.hpp"

#include <sstream>

namespace nlhive {

QPoly to_rational(const ZPoly& p) {
    std::vector<mpq_class> c;
    for (const auto& x : p.coeffs()) c.emplace_back(x);
    return QPoly(std::move(c));
}

std::optional<ZPoly> to_integer(const QPoly& p) {
    std::vector<mpz_class> c;
    for (const auto& x : p.coeffs()) {
        if (x.get_den() != 1) return std::nullopt;
        c.emplace_back(x.get_num());
    }
    return ZPoly(std::move(c));
}

std::string render(const ZPoly& p, char var) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
        mpz_class c = p.coeff(k);
        if (c == 0) continue;
        if (c < 0)
            os << '-';
        else if (!first)
            os << '+';
        mpz_class a = abs(c);
        if (a != 1 || k == 0) os << a.get_str();
        if (k >= 1) os << var;
        if (k >= 2) os << '^' << k;
        first = false;
    }
    return os.str();
}

std::string render(const QPoly& p, char var) {
    mpz_class den = 1;
    for (const auto& x : p.coeffs()) den = lcm(den, mpz_class(x.get_den()));
    auto num = to_integer(p * mpq_class(den));
    std::string s = render(*num, var);
    if (den == 1) return s;
    if (num->degree() > 0) s = "(" + s + ")";
    return s + "/" + den.get_str();
}

}  // namespace nlhive
