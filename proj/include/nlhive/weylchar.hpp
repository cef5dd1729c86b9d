#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "nlhive/partition.hpp"

namespace nlhive {

/// A: GL_r (roots e_i - e_j); B: SO(2r+1); C: Sp(2r); D: SO(2r).
enum class Family { A, B, C, D };

std::string to_string(Family f);
Family parse_family(std::string_view s);  // "A".."D", case-insensitive; ParseError

inline constexpr int kMaxRank = 6;
using Weight = std::array<std::int32_t, kMaxRank>;  // epsilon-basis coordinates

struct RootSystem {
    Family family = Family::A;
    int rank = 0;
    std::vector<Weight> positive_roots;
    Weight rho2{};  // 2*rho; for A the shift (r-1, ..., 0) is used

    /// Throws ValidationError unless 1 <= r <= kMaxRank.
    static RootSystem make(Family f, int r);
    std::uint64_t weyl_order() const;
};

/// Signed permutation: (w v)_{perm[i]} = sign[i] * v_i.
struct WeylElement {
    std::array<std::int8_t, kMaxRank> perm{};
    std::array<std::int8_t, kMaxRank> sign{};
    int det = 1;

    Weight apply(const Weight& v, int rank) const;
};

/// Permutations (A), with all sign changes (B, C) or an even number of them (D).
std::vector<WeylElement> weyl_group(const RootSystem& rs);

struct CharacterPoly {
    int rank = 0;
    std::map<Weight, mpz_class> terms;

    mpz_class coefficient(const Weight& w) const;
    mpz_class dimension() const;  // value at x_i = 1
    friend bool operator==(const CharacterPoly&, const CharacterPoly&) = default;
};

Weight to_weight(const Partition& p, int rank);

/// Weyl character: the alternant of la + rho divided exactly by that of rho.
/// Results are cached per (family, rank, la). Throws ValidationError if
/// l(la) > r, std::logic_error if the division leaves a remainder, and
/// BudgetExceeded if the quotient grows beyond `term_budget` terms.
CharacterPoly character(Family f, int r, const Partition& la, std::size_t term_budget = 5'000'000);

/// prod_{alpha > 0} <la + rho, alpha> / <rho, alpha>, computed separately from
/// the character.
mpz_class weyl_dimension(const RootSystem& rs, const Partition& la);

/// prod_{alpha > 0} (1 - x^{-alpha}) * ch.
std::map<Weight, mpz_class> project(const RootSystem& rs, const CharacterPoly& ch);

/// m_{mu,nu}^la(G): coefficient of x^la in prod (1 - x^{-alpha}) ch_mu ch_nu.
std::uint64_t tensor_multiplicity(Family f, int r, const Partition& mu, const Partition& nu, const Partition& la);

struct StabilizationRow {
    Family family;
    int rank;
    int t;
    std::uint64_t multiplicity;
    std::uint64_t nl;  // stretched Newell-Littlewood coefficient
};

struct StabilizationReport {
    int stable_rank = 0;  // l(mu) + l(nu)
    std::vector<StabilizationRow> rows;
    /// True when every row with rank >= stable_rank has multiplicity == nl.
    /// Rows below that rank are data only.
    bool stable_rows_agree = true;
};

/// Families B, C, D at ranks max(l(mu), l(nu), l(la), 1) .. r_max (default
/// l(mu)+l(nu)+1, capped at kMaxRank) and t = 1..t_max.
StabilizationReport verify_stabilization(const Partition& mu, const Partition& nu, const Partition& la, int t_max,
                                         int r_max = -1);

}  // namespace nlhive
