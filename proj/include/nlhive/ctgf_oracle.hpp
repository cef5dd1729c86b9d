#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "nlhive/partition.hpp"

namespace nlhive {

/// Exponent vector over at most kMaxVars variables.
inline constexpr int kMaxVars = 16;
using Exponent = std::array<std::int8_t, kMaxVars>;

struct ExponentHash {
    std::size_t operator()(const Exponent& e) const noexcept;
};

/// Sparse Laurent polynomial with integer coefficients.
///
/// Some variables carry an upper window on their exponent. A product drops
/// every monomial above a window and remembers that it did. Dropping is only
/// harmless while every later factor has nonnegative exponent in the windowed
/// variables; multiplying by anything else after a drop marks the polynomial
/// unsound, and coefficient() then refuses to answer.
class LaurentPoly {
public:
    explicit LaurentPoly(int num_vars);

    static LaurentPoly one(int num_vars);

    int num_vars() const noexcept { return n_; }
    std::size_t size() const noexcept { return terms_.size(); }
    const std::unordered_map<Exponent, mpz_class, ExponentHash>& terms() const noexcept { return terms_; }

    /// Upper bound on the exponent of `var` (inclusive).
    void set_window(int var, int max_exponent);

    void add_term(const Exponent& e, const mpz_class& c);

    /// *this *= other, then prune to the windows.
    void multiply(const LaurentPoly& other);

    /// *this *= (1 - m)
    void multiply_binomial(const Exponent& m);

    /// *this *= 1/(1 - m), as many terms as the windows can see. m must have a
    /// positive exponent in some windowed variable.
    void multiply_geometric(const Exponent& m);

    bool truncated() const noexcept { return truncated_; }
    bool sound() const noexcept { return sound_; }

    /// Exact coefficient. Throws TruncationRefused when pruning could have
    /// touched it.
    mpz_class coefficient(const Exponent& e) const;

    /// Terms whose exponents on `vars` equal `values`, with those exponents
    /// reset to zero. Same refusal rule as coefficient().
    LaurentPoly extract(const std::vector<int>& vars, const std::vector<int>& values) const;

private:
    bool in_window(const Exponent& e) const;
    void check_refusal(const std::vector<int>& vars, const std::vector<int>& values) const;

    int n_;
    std::vector<int> window_;  // -1: no window; else inclusive maximum
    std::unordered_map<Exponent, mpz_class, ExponentHash> terms_;
    bool truncated_ = false;
    bool sound_ = true;
};

/// The eight products of the constant-term formula over x_1..x_r (variables
/// 0..r-1), y_1..y_p (r..r+p-1) and z_1..z_q (r+p..r+p+q-1). Each Binomial
/// factor contributes (1 - m), each Geometric factor 1/(1 - m).
struct FactorSet {
    enum class Kind { Binomial, Geometric };
    struct Factor {
        std::string name;
        Kind kind;
        std::vector<Exponent> monomials;
    };
    int p = 0, q = 0, r = 0;
    Factor k_xy, k_xz, a_y, a_z, c_xbar, v_x, v_y, v_z;

    int num_vars() const { return r + p + q; }
};

/// Requires r = p + q and r + p + q <= kMaxVars.
FactorSet build_factors(int p, int q, int r);

struct CtOptions {
    int window_slack = 0;                   // windows are mu_a + slack, nu_c + slack
    std::size_t term_budget = 20'000'000;  // largest intermediate polynomial
    std::ostream* trace = nullptr;          // intermediate term counts
};

/// n_{mu,nu}^la as the coefficient of x^la y^mu z^nu in
///   K(x,y) K(x,z) A(y) A(z) C(xbar) V(x) V(y) V(z)
/// with p = l(mu), q = l(nu), r = p + q. Since n is symmetric, the labels are
/// permuted when needed so that l(la) <= l(mu) + l(nu); when no order allows
/// that, the coefficient is 0 without expansion.
///
/// Throws TruncationRefused if a window could hide contributions, and
/// BudgetExceeded if an intermediate product outgrows the term budget.
std::uint64_t nl_constant_term(const Partition& mu, const Partition& nu, const Partition& la,
                               const CtOptions& opts = {});

/// The coefficients of w^0..w^t_max in the series form of the same product
/// divided by (1 - w / x^la y^mu z^nu): one extraction per power of w.
std::vector<std::uint64_t> nl_gf_truncated(const Partition& mu, const Partition& nu, const Partition& la, int t_max,
                                           const CtOptions& opts = {});

}  // namespace nlhive
