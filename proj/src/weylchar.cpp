#include "nlhive/weylchar.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <mutex>
#include <numeric>
#include <tuple>

#include "nlhive/errors.hpp"
#include "nlhive/khive_nl.hpp"

namespace nlhive {

std::string to_string(Family f) {
    static const char* names[] = {"A", "B", "C", "D"};
    return names[static_cast<int>(f)];
}

Family parse_family(std::string_view s) {
    if (s.size() == 1) {
        switch (std::toupper(static_cast<unsigned char>(s[0]))) {
            case 'A': return Family::A;
            case 'B': return Family::B;
            case 'C': return Family::C;
            case 'D': return Family::D;
        }
    }
    throw ParseError("unknown Lie algebra family '" + std::string(s) + "' (expected A, B, C or D)");
}

RootSystem RootSystem::make(Family f, int r) {
    if (r < 1 || r > kMaxRank)
        throw ValidationError("rank " + std::to_string(r) + " outside 1.." + std::to_string(kMaxRank));
    RootSystem rs;
    rs.family = f;
    rs.rank = r;
    auto root = [](std::initializer_list<std::pair<int, int>> e) {
        Weight w{};
        for (auto [i, c] : e) w[i] += c;
        return w;
    };
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            rs.positive_roots.push_back(root({{i, 1}, {j, -1}}));
            if (f != Family::A) rs.positive_roots.push_back(root({{i, 1}, {j, 1}}));
        }
    for (int i = 0; i < r; ++i) {
        if (f == Family::B) rs.positive_roots.push_back(root({{i, 1}}));
        if (f == Family::C) rs.positive_roots.push_back(root({{i, 2}}));
        switch (f) {
            case Family::A:
            case Family::D: rs.rho2[i] = 2 * (r - 1 - i); break;
            case Family::B: rs.rho2[i] = 2 * r - 1 - 2 * i; break;
            case Family::C: rs.rho2[i] = 2 * (r - i); break;
        }
    }
    return rs;
}

std::uint64_t RootSystem::weyl_order() const {
    std::uint64_t fact = 1;
    for (int k = 2; k <= rank; ++k) fact *= static_cast<std::uint64_t>(k);
    switch (family) {
        case Family::A: return fact;
        case Family::B:
        case Family::C: return fact << rank;
        case Family::D: return fact << (rank - 1);
    }
    return 0;
}

Weight WeylElement::apply(const Weight& v, int rank) const {
    Weight out{};
    for (int i = 0; i < rank; ++i) out[perm[i]] = sign[i] * v[i];
    return out;
}

std::vector<WeylElement> weyl_group(const RootSystem& rs) {
    const int r = rs.rank;
    std::vector<int> p(r);
    std::iota(p.begin(), p.end(), 0);
    std::vector<WeylElement> out;
    do {
        int inversions = 0;
        for (int i = 0; i < r; ++i)
            for (int j = i + 1; j < r; ++j) inversions += p[i] > p[j];
        for (unsigned mask = 0; mask < (1u << r); ++mask) {
            int flips = std::popcount(mask);
            if (rs.family == Family::A && mask != 0) break;
            if (rs.family == Family::D && flips % 2 != 0) continue;
            WeylElement w;
            for (int i = 0; i < r; ++i) {
                w.perm[i] = static_cast<std::int8_t>(p[i]);
                w.sign[i] = (mask >> i) & 1 ? -1 : 1;
            }
            w.det = ((inversions + flips) % 2 == 0) ? 1 : -1;
            out.push_back(w);
        }
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

mpz_class CharacterPoly::coefficient(const Weight& w) const {
    auto it = terms.find(w);
    return it == terms.end() ? mpz_class(0) : it->second;
}

mpz_class CharacterPoly::dimension() const {
    mpz_class s = 0;
    for (const auto& [w, c] : terms) s += c;
    return s;
}

Weight to_weight(const Partition& p, int rank) {
    if (p.length() > static_cast<std::size_t>(rank))
        throw ValidationError("partition (" + render(p) + ") is longer than the rank " + std::to_string(rank));
    Weight w{};
    for (int i = 0; i < rank; ++i) {
        if (p[i] > 1'000'000) throw OverflowError("weight too large for the character module");
        w[i] = static_cast<std::int32_t>(p[i]);
    }
    return w;
}

namespace {

using Terms = std::map<Weight, mpz_class>;

Weight add(const Weight& a, const Weight& b) {
    Weight r{};
    for (int i = 0; i < kMaxRank; ++i) r[i] = a[i] + b[i];
    return r;
}
Weight sub(const Weight& a, const Weight& b) {
    Weight r{};
    for (int i = 0; i < kMaxRank; ++i) r[i] = a[i] - b[i];
    return r;
}

Terms alternant(const std::vector<WeylElement>& W, const Weight& v, int r) {
    Terms t;
    for (const auto& w : W) t[w.apply(v, r)] += w.det;
    std::erase_if(t, [](const auto& kv) { return kv.second == 0; });
    return t;
}

// Exact quotient num / den in the Laurent ring, peeling lexicographically
// leading terms. Lex order is translation invariant, so every quotient term
// of an exact division lies at or above low(num) - low(den); reaching below
// that means a remainder.
Terms divide_exact(Terms num, const Terms& den, std::size_t term_budget) {
    const auto& [dlead, dcoef] = *den.rbegin();
    const Weight nlow = num.begin()->first;
    const Weight dlow = den.begin()->first;
    Terms q;
    while (!num.empty()) {
        auto [lead, c] = *num.rbegin();
        if (sub(lead, dlead) < sub(nlow, dlow) || c % dcoef != 0)
            throw std::logic_error("Weyl alternant division is not exact");
        mpz_class k = c / dcoef;
        Weight shift = sub(lead, dlead);
        q[shift] += k;
        if (q.size() > term_budget) throw BudgetExceeded("character exceeded its term budget", q.size(), 0);
        for (const auto& [e, d] : den) {
            auto key = add(shift, e);
            auto it = num.find(key);
            if (it == num.end()) {
                num.emplace(key, -k * d);
            } else {
                it->second -= k * d;
                if (it->second == 0) num.erase(it);
            }
        }
    }
    return q;
}

std::mutex cache_mutex;
std::map<std::tuple<Family, int, std::vector<std::int64_t>>, CharacterPoly> cache;

}  // namespace

CharacterPoly character(Family f, int r, const Partition& la, std::size_t term_budget) {
    auto key = std::make_tuple(f, r, la.parts());
    {
        std::lock_guard lk(cache_mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto rs = RootSystem::make(f, r);
    Weight top = to_weight(la, r);
    for (int i = 0; i < r; ++i) top[i] = 2 * top[i] + rs.rho2[i];
    auto W = weyl_group(rs);
    // doubled exponents keep half-integral rho (type B) integral
    auto q = divide_exact(alternant(W, top, r), alternant(W, rs.rho2, r), term_budget);
    CharacterPoly ch;
    ch.rank = r;
    for (const auto& [e, c] : q) {
        Weight h{};
        for (int i = 0; i < r; ++i) {
            if (e[i] % 2 != 0) throw std::logic_error("character has a half-integral weight");
            h[i] = e[i] / 2;
        }
        ch.terms.emplace(h, c);
    }
    std::lock_guard lk(cache_mutex);
    cache.emplace(key, ch);
    return ch;
}

mpz_class weyl_dimension(const RootSystem& rs, const Partition& la) {
    Weight l = to_weight(la, rs.rank);
    mpq_class d = 1;
    for (const auto& a : rs.positive_roots) {
        long num = 0, den = 0;
        for (int i = 0; i < rs.rank; ++i) {
            num += static_cast<long>(2 * l[i] + rs.rho2[i]) * a[i];
            den += static_cast<long>(rs.rho2[i]) * a[i];
        }
        d *= mpq_class(num, den);
    }
    d.canonicalize();
    if (d.get_den() != 1) throw std::logic_error("Weyl dimension is not an integer");
    return d.get_num();
}

std::map<Weight, mpz_class> project(const RootSystem& rs, const CharacterPoly& ch) {
    Terms p = ch.terms;
    for (const auto& a : rs.positive_roots) {
        Terms next = p;
        for (const auto& [e, c] : p) next[sub(e, a)] -= c;
        std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
        p = std::move(next);
    }
    return p;
}

std::uint64_t tensor_multiplicity(Family f, int r, const Partition& mu, const Partition& nu, const Partition& la) {
    auto rs = RootSystem::make(f, r);
    Weight target = to_weight(la, r);
    to_weight(mu, r);
    to_weight(nu, r);
    auto pm = project(rs, character(f, r, mu));
    auto cn = character(f, r, nu);
    mpz_class m = 0;
    for (const auto& [e, c] : pm) m += c * cn.coefficient(sub(target, e));
    if (m < 0 || !m.fits_ulong_p()) throw std::logic_error("tensor multiplicity is not a nonnegative count");
    return m.get_ui();
}

StabilizationReport verify_stabilization(const Partition& mu, const Partition& nu, const Partition& la, int t_max,
                                         int r_max) {
    StabilizationReport rep;
    rep.stable_rank = static_cast<int>(mu.length() + nu.length());
    int r_min = static_cast<int>(std::max({mu.length(), nu.length(), la.length(), std::size_t{1}}));
    if (r_max < 0) r_max = std::min(rep.stable_rank + 1, kMaxRank);
    if (r_max > kMaxRank) throw ValidationError("rank above " + std::to_string(kMaxRank) + " refused");
    for (int t = 1; t <= t_max; ++t) {
        auto a = mu.stretch(t), b = nu.stretch(t), c = la.stretch(t);
        auto nl = count_nl_hive(a, b, c);
        for (Family f : {Family::B, Family::C, Family::D})
            for (int r = r_min; r <= r_max; ++r) {
                auto m = tensor_multiplicity(f, r, a, b, c);
                rep.rows.push_back({f, r, t, m, nl});
                if (r >= rep.stable_rank && m != nl) rep.stable_rows_agree = false;
            }
    }
    return rep;
}

}  // namespace nlhive
