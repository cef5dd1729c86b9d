#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "nlhive/errors.hpp"
#include "nlhive/lattice_count.hpp"
#include "nlhive/partition.hpp"
#include "nlhive/poly.hpp"
#include "nlhive/polyexpr.hpp"

namespace nlhive {

struct SequenceOptions {
    EnumerationLimits limits;                       // per stretched triple
    std::optional<std::filesystem::path> cache_dir;  // unset: no cache
    unsigned threads = 1;                           // t values in flight at once
};

/// A budget ran out part way through a stretched sequence. `computed` holds
/// the contiguous prefix t = 0..k-1 that did finish.
class PartialSequence : public BudgetExceeded {
public:
    PartialSequence(const std::string& what, std::uint64_t nodes, std::vector<std::uint64_t> computed)
        : BudgetExceeded(what, nodes, 0), computed_(std::move(computed)) {}
    const std::vector<std::uint64_t>& computed() const noexcept { return computed_; }

private:
    std::vector<std::uint64_t> computed_;
};

/// n_{t mu, t nu}^{t la} for t = 0..t_max.
std::vector<std::uint64_t> stretched_sequence(const Partition& mu, const Partition& nu, const Partition& la,
                                              int t_max, const SequenceOptions& opts = {});

/// 3n(n-1)/2 with n = max(l(mu), l(nu), l(la)).
int default_degree_bound(const Partition& mu, const Partition& nu, const Partition& la);

/// Smallest sequence length fit_quasi_polynomial accepts for a bound.
inline int required_samples(int degree_bound) { return 2 * (degree_bound + 1) + 4; }

struct QuasiPolynomial2 {
    QPoly p_even;
    QPoly p_odd;

    mpq_class operator()(std::int64_t t) const { return (t % 2 == 0 ? p_even : p_odd)(mpq_class(t)); }
    int degree() const { return std::max(p_even.degree(), p_odd.degree()); }
    bool is_zero() const { return p_even.is_zero() && p_odd.is_zero(); }
    bool is_polynomial() const { return p_even == p_odd; }
    friend bool operator==(const QuasiPolynomial2&, const QuasiPolynomial2&) = default;
};

/// Interpolates the even- and odd-indexed samples separately on their first
/// degree_bound+1 points; every further sample is a holdout and must match.
/// A sequence that vanishes for all t >= 1 fits to 0 (the empty polytope;
/// the t = 0 entry is 1 by convention only). Throws FitError.
QuasiPolynomial2 fit_quasi_polynomial(std::span<const std::uint64_t> seq, int degree_bound);

/// G(w) / ((1-w)^d1 (1-w^2)^d2).
struct RationalGF {
    ZPoly numerator;
    int d1 = 0;
    int d2 = 0;

    ZPoly denominator() const;
    bool is_zero() const { return numerator.is_zero(); }
    RationalFunction as_function() const { return {to_rational(numerator), to_rational(denominator())}; }
    friend bool operator==(const RationalGF&, const RationalGF&) = default;
};

/// Lowest terms at w = 1 and w = -1: with pole orders p and q there,
/// d2 = q and d1 = p - q. The zero quasi-polynomial maps to G = 0, d1 = d2 = 0.
RationalGF to_generating_function(const QuasiPolynomial2& qp);

std::vector<mpz_class> expand_gf(const RationalGF& gf, int t_max);

/// "(3w^2+3w+1)/((1-w)^3(1-w^2))"
std::string render(const RationalGF& gf);

/// Identity of rational functions, whatever normalisation either side uses.
bool gf_equivalent(const RationalGF& gf, const RationalFunction& other);

// --- conjecture checks ------------------------------------------------------

enum class Verdict { Holds, Violated, NotApplicable };

std::string to_string(Verdict v);

struct ConjectureItem {
    std::string id;  // "E(i)" .. "O(v)"
    Verdict verdict = Verdict::NotApplicable;
    // Violated items that hinge on one sample carry its t; coefficient items
    // name the offending coefficient in the note instead.
    std::optional<std::int64_t> witness_t;
    std::string note;
};

struct ConjectureReport {
    Parity parity = Parity::Even;
    std::vector<ConjectureItem> items;

    const ConjectureItem& item(const std::string& id) const;
    bool any_violated() const;
};

struct StretchResult {
    Partition mu, nu, la;
    std::vector<std::uint64_t> sequence;
    int degree_bound = 0;
    QuasiPolynomial2 qp;
    RationalGF gf;
    ConjectureReport report;
};

/// Sequence, fit, generating function and report in one go. degree_bound < 0
/// means default_degree_bound(); t_max < 0 means required_samples(bound)-1.
/// A FitError is not thrown: it shows up as E(iii)/O(iii) Violated, with qp
/// and gf left zero.
StretchResult analyse_stretch(const Partition& mu, const Partition& nu, const Partition& la, int t_max = -1,
                              int degree_bound = -1, const SequenceOptions& opts = {});

/// The same from a sequence computed elsewhere (another counting method).
/// Throws ValidationError if it is too short for the bound.
StretchResult analyse_sequence(const Partition& mu, const Partition& nu, const Partition& la,
                               std::vector<std::uint64_t> seq, int degree_bound = -1);

/// Evaluates the items decidable from a computed sequence and its fit.
ConjectureReport check_conjectures(const Partition& mu, const Partition& nu, const Partition& la,
                                   std::span<const std::uint64_t> seq,
                                   const std::optional<QuasiPolynomial2>& qp, const std::optional<RationalGF>& gf,
                                   const std::string& fit_failure = {});

ConjectureReport check_conjectures(const Partition& mu, const Partition& nu, const Partition& la, int t_max,
                                   const SequenceOptions& opts = {});

// --- stability scans ----------------------------------------------------------

struct StabilityConfig {
    enum class Mode {
        HeadIncrement,  // (mu_1 + a, mu_2, ...) for each of the three
        Prepend,        // (a, sigma), (a, tau), (a, rho)
    };
    Mode mode = Mode::HeadIncrement;
    Partition mu, nu, la;
    int a_min = 0, a_max = 0;
    int t_max = -1;         // per triple; < 0: enough for the degree bound
    int degree_bound = -1;  // < 0: default
    SequenceOptions seq;
};

struct StabilityRow {
    int a = 0;
    Partition mu, nu, la;
    std::vector<std::uint64_t> sequence;
    QuasiPolynomial2 qp;
    RationalGF gf;
};

struct StabilityTable {
    std::vector<StabilityRow> rows;
    // Per parity of a: smallest a from which every later same-parity a in the
    // range gives the same generating function, seen on at least two values.
    std::optional<int> onset_even, onset_odd;
};

/// Triple used at a given a; throws ValidationError if Prepend would produce
/// a non-partition.
std::array<Partition, 3> stability_triple(const StabilityConfig& cfg, int a);

StabilityTable stability_scan(const StabilityConfig& cfg);

// --- serialisation -----------------------------------------------------------

nlohmann::json to_json(const QuasiPolynomial2& qp);
nlohmann::json to_json(const RationalGF& gf);
nlohmann::json to_json(const ConjectureReport& r);
nlohmann::json to_json(const StretchResult& r);
StretchResult stretch_result_from_json(const nlohmann::json& j);

}  // namespace nlhive
