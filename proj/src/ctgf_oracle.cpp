#include "nlhive/ctgf_oracle.hpp"

#include <algorithm>
#include <ostream>
#include <string_view>

#include "nlhive/errors.hpp"

namespace nlhive {

std::size_t ExponentHash::operator()(const Exponent& e) const noexcept {
    return std::hash<std::string_view>{}(std::string_view(reinterpret_cast<const char*>(e.data()), e.size()));
}

namespace {

Exponent add_exponents(const Exponent& a, const Exponent& b, int n) {
    Exponent r{};
    for (int v = 0; v < n; ++v) {
        int s = a[v] + b[v];
        if (s > 127 || s < -127) throw OverflowError("Laurent exponent outside the int8 range");
        r[v] = static_cast<std::int8_t>(s);
    }
    return r;
}

Exponent unit(std::initializer_list<std::pair<int, int>> entries) {
    Exponent e{};
    for (auto [v, k] : entries) e[v] = static_cast<std::int8_t>(e[v] + k);
    return e;
}

}  // namespace

LaurentPoly::LaurentPoly(int num_vars) : n_(num_vars), window_(num_vars, -1) {
    if (num_vars < 0 || num_vars > kMaxVars) throw ValidationError("too many Laurent variables");
}

LaurentPoly LaurentPoly::one(int num_vars) {
    LaurentPoly p(num_vars);
    p.terms_[Exponent{}] = 1;
    return p;
}

bool LaurentPoly::in_window(const Exponent& e) const {
    for (int v = 0; v < n_; ++v)
        if (window_[v] >= 0 && e[v] > window_[v]) return false;
    return true;
}

void LaurentPoly::set_window(int var, int max_exponent) {
    window_.at(var) = max_exponent;
    std::erase_if(terms_, [&](const auto& kv) {
        bool out = kv.first[var] > max_exponent;
        truncated_ = truncated_ || out;
        return out;
    });
}

void LaurentPoly::add_term(const Exponent& e, const mpz_class& c) {
    if (c == 0) return;
    if (!in_window(e)) {
        truncated_ = true;
        return;
    }
    auto& slot = terms_[e];
    slot += c;
    if (slot == 0) terms_.erase(e);
}

void LaurentPoly::multiply(const LaurentPoly& other) {
    if (truncated_)
        for (const auto& [e, c] : other.terms_)
            for (int v = 0; v < n_; ++v)
                if (window_[v] >= 0 && e[v] < 0) sound_ = false;
    std::unordered_map<Exponent, mpz_class, ExponentHash> out;
    for (const auto& [a, ca] : terms_)
        for (const auto& [b, cb] : other.terms_) {
            auto e = add_exponents(a, b, n_);
            if (!in_window(e)) {
                truncated_ = true;
                continue;
            }
            auto& slot = out[e];
            slot += ca * cb;
        }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    terms_ = std::move(out);
}

void LaurentPoly::multiply_binomial(const Exponent& m) {
    LaurentPoly f(n_);
    f.terms_[Exponent{}] = 1;
    f.terms_[m] = -1;
    multiply(f);
}

void LaurentPoly::multiply_geometric(const Exponent& m) {
    bool grows = false;
    for (int v = 0; v < n_; ++v) {
        if (window_[v] < 0) continue;
        if (m[v] < 0) throw std::logic_error("geometric factor decreases a windowed exponent");
        grows = grows || m[v] > 0;
    }
    if (!grows) throw std::logic_error("geometric factor is not bounded by any window");
    auto acc = terms_;
    auto cur = terms_;
    while (!cur.empty()) {
        std::unordered_map<Exponent, mpz_class, ExponentHash> next;
        for (const auto& [e, c] : cur) {
            auto s = add_exponents(e, m, n_);
            if (!in_window(s)) {
                truncated_ = true;
                continue;
            }
            next[s] = c;
        }
        for (const auto& [e, c] : next) acc[e] += c;
        cur = std::move(next);
    }
    std::erase_if(acc, [](const auto& kv) { return kv.second == 0; });
    terms_ = std::move(acc);
}

void LaurentPoly::check_refusal(const std::vector<int>& vars, const std::vector<int>& values) const {
    if (!sound_) throw TruncationRefused("a factor with negative windowed exponents followed a truncation");
    if (!truncated_) return;
    for (std::size_t k = 0; k < vars.size(); ++k)
        if (window_[vars[k]] >= 0 && values[k] > window_[vars[k]])
            throw TruncationRefused("requested exponent " + std::to_string(values[k]) + " of variable " +
                                    std::to_string(vars[k]) + " lies above its window " +
                                    std::to_string(window_[vars[k]]));
    // a windowed variable left free could also have lost terms
    for (int v = 0; v < n_; ++v)
        if (window_[v] >= 0 && std::find(vars.begin(), vars.end(), v) == vars.end())
            throw TruncationRefused("windowed variable " + std::to_string(v) + " is not fixed by the extraction");
}

mpz_class LaurentPoly::coefficient(const Exponent& e) const {
    std::vector<int> vars(n_), values(n_);
    for (int v = 0; v < n_; ++v) vars[v] = v, values[v] = e[v];
    check_refusal(vars, values);
    auto it = terms_.find(e);
    return it == terms_.end() ? mpz_class(0) : it->second;
}

LaurentPoly LaurentPoly::extract(const std::vector<int>& vars, const std::vector<int>& values) const {
    check_refusal(vars, values);
    LaurentPoly out(n_);
    for (const auto& [e, c] : terms_) {
        bool match = true;
        for (std::size_t k = 0; k < vars.size() && match; ++k) match = e[vars[k]] == values[k];
        if (!match) continue;
        Exponent f = e;
        for (int v : vars) f[v] = 0;
        out.terms_[f] += c;
    }
    return out;
}

// --- factors -----------------------------------------------------------------

FactorSet build_factors(int p, int q, int r) {
    if (p < 0 || q < 0 || r != p + q) throw ValidationError("the constant-term formula needs r = p + q");
    if (r + p + q > kMaxVars) throw ValidationError("too many variables for the constant-term oracle");
    FactorSet f;
    f.p = p, f.q = q, f.r = r;
    auto x = [](int i) { return i; };
    auto y = [r](int a) { return r + a; };
    auto z = [r, p](int c) { return r + p + c; };
    using K = FactorSet::Kind;
    f.k_xy = {"K(x,y)", K::Geometric, {}};
    f.k_xz = {"K(x,z)", K::Geometric, {}};
    f.a_y = {"A(y)", K::Binomial, {}};
    f.a_z = {"A(z)", K::Binomial, {}};
    f.c_xbar = {"C(xbar)", K::Binomial, {}};
    f.v_x = {"V(x)", K::Binomial, {}};
    f.v_y = {"V(y)", K::Binomial, {}};
    f.v_z = {"V(z)", K::Binomial, {}};
    for (int i = 0; i < r; ++i) {
        for (int a = 0; a < p; ++a) {
            f.k_xy.monomials.push_back(unit({{x(i), 1}, {y(a), 1}}));
            f.k_xy.monomials.push_back(unit({{x(i), -1}, {y(a), 1}}));
        }
        // second K factor runs over the q variables z_c
        for (int c = 0; c < q; ++c) {
            f.k_xz.monomials.push_back(unit({{x(i), 1}, {z(c), 1}}));
            f.k_xz.monomials.push_back(unit({{x(i), -1}, {z(c), 1}}));
        }
        for (int j = i; j < r; ++j) f.c_xbar.monomials.push_back(unit({{x(i), -1}, {x(j), -1}}));
        for (int j = i + 1; j < r; ++j) f.v_x.monomials.push_back(unit({{x(i), -1}, {x(j), 1}}));
    }
    for (int a = 0; a < p; ++a)
        for (int b = a + 1; b < p; ++b) {
            f.a_y.monomials.push_back(unit({{y(a), 1}, {y(b), 1}}));
            f.v_y.monomials.push_back(unit({{y(a), -1}, {y(b), 1}}));
        }
    for (int c = 0; c < q; ++c)
        for (int d = c + 1; d < q; ++d) {
            f.a_z.monomials.push_back(unit({{z(c), 1}, {z(d), 1}}));
            f.v_z.monomials.push_back(unit({{z(c), -1}, {z(d), 1}}));
        }
    return f;
}

// --- coefficient extraction -------------------------------------------------------

namespace {

void check_budget(const LaurentPoly& p, const CtOptions& opts, const char* stage) {
    if (opts.trace) *opts.trace << "ct: " << stage << ": " << p.size() << " terms\n";
    if (p.size() > opts.term_budget)
        throw BudgetExceeded(std::string("constant-term expansion exceeded its term budget at ") + stage, p.size(), 0);
}

// [y^parts] V(y) A(y) K(x,y) as a Laurent polynomial in x (y exponents zero).
// The finite factors go first; the windows are only imposed once every
// remaining factor is nonnegative in the windowed variables.
LaurentPoly one_side(const FactorSet& f, const FactorSet::Factor& v, const FactorSet::Factor& a,
                     const FactorSet::Factor& k, int first_var, const Partition& parts, const CtOptions& opts,
                     const char* name) {
    const int n = f.num_vars();
    const int len = static_cast<int>(parts.length());
    auto poly = LaurentPoly::one(n);
    for (const auto& m : v.monomials) poly.multiply_binomial(m);
    for (const auto& m : a.monomials) poly.multiply_binomial(m);
    for (int s = 0; s < len; ++s) poly.set_window(first_var + s, static_cast<int>(parts[s]) + opts.window_slack);
    for (const auto& m : k.monomials) {
        poly.multiply_geometric(m);
        check_budget(poly, opts, name);
    }
    std::vector<int> vars(len), values(len);
    for (int s = 0; s < len; ++s) vars[s] = first_var + s, values[s] = static_cast<int>(parts[s]);
    return poly.extract(vars, values);
}

std::uint64_t ct_ordered(const Partition& mu, const Partition& nu, const Partition& la, const CtOptions& opts) {
    const int p = static_cast<int>(mu.length()), q = static_cast<int>(nu.length()), r = p + q;
    if (r == 0) return la.empty() ? 1 : 0;
    for (auto part : mu.parts())
        if (part > 100) throw ValidationError("constant-term oracle is for tiny instances only");
    for (auto part : nu.parts())
        if (part > 100) throw ValidationError("constant-term oracle is for tiny instances only");
    auto f = build_factors(p, q, r);
    const int n = f.num_vars();

    auto ys = one_side(f, f.v_y, f.a_y, f.k_xy, r, mu, opts, "y-side");
    auto zs = one_side(f, f.v_z, f.a_z, f.k_xz, r + p, nu, opts, "z-side");

    auto w = LaurentPoly::one(n);
    for (const auto& m : f.c_xbar.monomials) w.multiply_binomial(m);
    for (const auto& m : f.v_x.monomials) w.multiply_binomial(m);
    ys.multiply(w);
    check_budget(ys, opts, "x-side");

    // [x^la] ys * zs without forming the product
    Exponent target{};
    for (int i = 0; i < r; ++i) {
        if (la[i] > 127) throw OverflowError("Laurent exponent outside the int8 range");
        target[i] = static_cast<std::int8_t>(la[i]);
    }
    mpz_class total = 0;
    for (const auto& [e, c] : ys.terms()) {
        Exponent need{};
        bool representable = true;
        for (int i = 0; i < r && representable; ++i) {
            int d = target[i] - e[i];
            representable = d <= 127 && d >= -127;
            need[i] = static_cast<std::int8_t>(d);
        }
        if (!representable) continue;
        if (auto it = zs.terms().find(need); it != zs.terms().end()) total += c * it->second;
    }
    if (total < 0 || !total.fits_ulong_p()) throw std::logic_error("constant term is not a nonnegative count");
    return total.get_ui();
}

}  // namespace

std::uint64_t nl_constant_term(const Partition& mu, const Partition& nu, const Partition& la, const CtOptions& opts) {
    if (la.length() <= mu.length() + nu.length()) return ct_ordered(mu, nu, la, opts);
    if (nu.length() <= mu.length() + la.length()) return ct_ordered(mu, la, nu, opts);
    if (mu.length() <= nu.length() + la.length()) return ct_ordered(nu, la, mu, opts);
    return 0;  // l(la) <= l(beta) + l(gamma) <= l(mu) + l(nu) fails for every term
}

std::vector<std::uint64_t> nl_gf_truncated(const Partition& mu, const Partition& nu, const Partition& la, int t_max,
                                           const CtOptions& opts) {
    if (t_max < 0) throw ValidationError("t_max must be nonnegative");
    std::vector<std::uint64_t> seq;
    for (int t = 0; t <= t_max; ++t) seq.push_back(nl_constant_term(mu.stretch(t), nu.stretch(t), la.stretch(t), opts));
    return seq;
}

}  // namespace nlhive
