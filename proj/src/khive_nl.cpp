#include "nlhive/khive_nl.hpp"

#include <algorithm>
#include <sstream>

#include "nlhive/errors.hpp"
#include "nlhive/hive_lr.hpp"

namespace nlhive {

using geom::Affine;
using geom::Vertex;

namespace {

struct Weights {
    std::int64_t alpha, beta, gamma;
};

// 2|alpha| = |mu|+|nu|-|la| and cyclically; nullopt unless all are
// nonnegative integers.
std::optional<Weights> boundary_weights(const Partition& mu, const Partition& nu, const Partition& la) {
    std::int64_t m = mu.weight(), v = nu.weight(), l = la.weight();
    std::int64_t total = checked::add(checked::add(m, v), l);
    if (total % 2 != 0) return std::nullopt;
    Weights w{(m + v - l) / 2, (l + m - v) / 2, (v + l - m) / 2};
    if (w.alpha < 0 || w.beta < 0 || w.gamma < 0) return std::nullopt;
    return w;
}

int frame_size(const Partition& mu, const Partition& nu, const Partition& la) {
    return static_cast<int>(std::max({mu.length(), nu.length(), la.length(), std::size_t{1}}));
}

Partition intersect(const Partition& a, const Partition& b) {
    std::vector<std::int64_t> p(std::min(a.length(), b.length()));
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::min(a[i], b[i]);
    return Partition(std::move(p));
}

std::vector<Partition> inside_of_weight(const Partition& outer, std::int64_t w) {
    std::vector<Partition> out;
    for (auto& p : subpartitions(outer))
        if (p.weight() == w) out.push_back(std::move(p));
    return out;
}

// Unit edges carrying the parts of alpha (left side), beta (j = n) and gamma
// (i = n), as (far end, near end). The rhombus rules make each of these
// sequences weakly decreasing but do not keep them nonnegative, so without
// these rows the composite region is unbounded.
std::vector<std::pair<Vertex, Vertex>> internal_edges(int n) {
    std::vector<std::pair<Vertex, Vertex>> e;
    for (int k = 1; k <= n; ++k) {
        e.push_back({{0, k}, {0, k - 1}});
        e.push_back({{k, n}, {k - 1, n}});
        e.push_back({{n, n + k}, {n, n + k - 1}});
    }
    return e;
}

}  // namespace

bool nl_vanishes(const Partition& mu, const Partition& nu, const Partition& la) {
    return !boundary_weights(mu, nu, la).has_value();
}

CompositeFrame make_composite_frame(const Partition& mu, const Partition& nu, const Partition& la, int n) {
    auto w = boundary_weights(mu, nu, la);
    if (!w) throw ValidationError("triple has no admissible boundary weights");
    if (n < 1) throw ValidationError("hive side length must be positive");
    auto un = static_cast<std::size_t>(n);
    if (mu.length() > un || nu.length() > un || la.length() > un)
        throw ValidationError("hive side length " + std::to_string(n) + " is shorter than a partition");

    CompositeFrame f;
    f.n = n;
    std::vector<std::int64_t> bottom(2 * n + 1, 0), top(n + 1, w->alpha);
    for (int k = 1; k <= n; ++k) {
        bottom[k] = checked::add(bottom[k - 1], mu[k - 1]);
        top[k] = checked::add(top[k - 1], la[k - 1]);
    }
    for (int k = 1; k <= n; ++k) bottom[n + k] = checked::add(bottom[n + k - 1], nu[k - 1]);

    auto in_region = [n](int i, int j) { return 0 <= i && i <= j && j <= 2 * n && j - i <= n; };
    auto fixed = [n](int i, int j) { return i == j || j - i == n || (i == 0) || j == 2 * n; };

    // sweep: mu-triangle by rows from the bottom, lambda-triangle by rows from
    // the top, nu-triangle by rows from the bottom
    std::vector<std::pair<std::tuple<int, int, int>, Vertex>> order;
    for (int i = 0; i <= 2 * n; ++i) {
        for (int j = i; j <= 2 * n; ++j) {
            if (!in_region(i, j)) continue;
            bool is_free = !fixed(i, j) || (i == 0 && j != 0 && j != n);
            if (!is_free) continue;
            int d = j - i;
            if (j <= n)
                order.push_back({{0, d, i}, {i, j}});
            else if (i <= n)
                order.push_back({{1, -d, i}, {i, j}});
            else
                order.push_back({{2, d, i}, {i, j}});
        }
    }
    std::sort(order.begin(), order.end());
    std::map<Vertex, int> var;
    for (auto& [key, v] : order) {
        var[v] = static_cast<int>(f.free.size());
        f.free.push_back(v);
    }

    for (int i = 0; i <= 2 * n; ++i) {
        for (int j = i; j <= 2 * n; ++j) {
            if (!in_region(i, j)) continue;
            Affine a;
            if (auto it = var.find({i, j}); it != var.end())
                a.terms.push_back({it->second, 1});
            else if (i == j)
                a.constant = bottom[i];
            else if (j - i == n)
                a.constant = top[i];
            else  // right side, i = n + j' with 0 < j' < n
                a = Affine{top[n], {{var.at({0, i - n}), 1}}};
            f.label[{i, j}] = a;
        }
    }

    for (const auto& r : geom::rhombi(geom::composite_triangles(n)))
        f.constraints.push_back(geom::rhombus_inequality(r, f.label.at(r.obtuse[0]), f.label.at(r.obtuse[1]),
                                                         f.label.at(r.acute[0]), f.label.at(r.acute[1])));
    for (auto [hi, lo] : internal_edges(n)) {
        // label(hi) - label(lo) >= 0
        const auto& a = f.label.at(hi);
        const auto& b = f.label.at(lo);
        Inequality q;
        q.terms = a.terms;
        for (auto t : b.terms) q.terms.push_back({t.var, -t.coeff});
        q.rhs = checked::sub(b.constant, a.constant);
        f.constraints.push_back(std::move(q));
    }
    return f;
}

std::uint64_t count_nl_hive(const Partition& mu, const Partition& nu, const Partition& la,
                            const EnumerationLimits& limits) {
    if (nl_vanishes(mu, nu, la)) return 0;
    auto frame = make_composite_frame(mu, nu, la, frame_size(mu, nu, la));
    LatticeCounter counter(static_cast<int>(frame.free.size()), std::move(frame.constraints));
    return counter.count(limits).count;
}

std::uint64_t count_nl_lrsum(const Partition& mu, const Partition& nu, const Partition& la,
                             const EnumerationLimits& limits) {
    auto w = boundary_weights(mu, nu, la);
    if (!w) return 0;
    auto alphas = inside_of_weight(intersect(mu, nu), w->alpha);
    auto betas = inside_of_weight(intersect(mu, la), w->beta);
    auto gammas = inside_of_weight(intersect(nu, la), w->gamma);
    std::uint64_t total = 0;
    for (const auto& a : alphas) {
        for (const auto& b : betas) {
            auto c1 = count_lr_auto(a, b, mu, limits);
            if (c1 == 0) continue;
            for (const auto& g : gammas) {
                auto c2 = count_lr_auto(a, g, nu, limits);
                if (c2 == 0) continue;
                auto c3 = count_lr_auto(b, g, la, limits);
                if (c3 == 0) continue;
                std::uint64_t term;
                if (__builtin_mul_overflow(c1, c2, &term) || __builtin_mul_overflow(term, c3, &term))
                    throw OverflowError("LR-sum term overflow");
                total = checked::add(total, term);
            }
        }
    }
    return total;
}

// --- K-polytope -----------------------------------------------------------

int KPolytopeSystem::column(Vertex v) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    if (it == vertices.end() || *it != v) throw std::out_of_range("vertex outside the composite hive");
    return static_cast<int>(it - vertices.begin());
}

KPolytopeSystem k_polytope(const Partition& mu, const Partition& nu, const Partition& la) {
    KPolytopeSystem sys;
    const int n = sys.n = frame_size(mu, nu, la);
    for (int i = 0; i <= 2 * n; ++i)
        for (int j = i; j <= 2 * n; ++j)
            if (j - i <= n) sys.vertices.push_back({i, j});
    const int k = sys.dimension();

    using Rel = KPolytopeSystem::Relation;
    auto row = [&](std::initializer_list<std::pair<Vertex, std::int64_t>> terms, Rel rel, std::int64_t rhs,
                   std::string tag) {
        KPolytopeSystem::Row r{std::vector<std::int64_t>(k, 0), rel, rhs, std::move(tag)};
        for (auto [v, c] : terms) r.coeffs[sys.column(v)] += c;
        sys.rows.push_back(std::move(r));
    };

    // anchoring and |alpha|; the second row is doubled so odd triples keep an
    // integral right-hand side (and then have no integer points)
    row({{{0, 0}, 1}}, Rel::Eq, 0, "anchor");
    row({{{0, n}, 2}, {{0, 0}, -2}}, Rel::Eq,
        checked::sub(checked::add(mu.weight(), nu.weight()), la.weight()), "alpha-weight");
    for (int j = 1; j <= n - 1; ++j)
        row({{{n + j, 2 * n}, 1}, {{n, 2 * n}, -1}, {{0, j}, -1}, {{0, 0}, 1}}, Rel::Eq, 0,
            "alpha-match " + std::to_string(j));
    for (int i = 1; i <= n; ++i) {
        row({{{i, i}, 1}, {{i - 1, i - 1}, -1}}, Rel::Eq, mu[i - 1], "mu " + std::to_string(i));
        row({{{n + i, n + i}, 1}, {{n + i - 1, n + i - 1}, -1}}, Rel::Eq, nu[i - 1], "nu " + std::to_string(i));
        row({{{i, n + i}, 1}, {{i - 1, n + i - 1}, -1}}, Rel::Eq, la[i - 1], "lambda " + std::to_string(i));
    }
    static const char* piece_name[] = {"mu", "lambda", "nu"};
    for (const auto& r : geom::rhombi(geom::composite_triangles(n))) {
        auto name = [](Vertex v) { return "(" + std::to_string(v.i) + "," + std::to_string(v.j) + ")"; };
        row({{r.obtuse[0], 1}, {r.obtuse[1], 1}, {r.acute[0], -1}, {r.acute[1], -1}}, Rel::Ge, 0,
            std::string("rhombus ") + piece_name[r.piece] + " " + name(r.obtuse[0]) + name(r.obtuse[1]));
    }
    for (auto [hi, lo] : internal_edges(n)) {
        const char* which = hi.i == 0 ? "alpha" : (hi.j == n ? "beta" : "gamma");
        int part = hi.i == 0 ? hi.j : (hi.j == n ? hi.i : hi.j - n);
        row({{hi, 1}, {lo, -1}}, Rel::Ge, 0, std::string(which) + " part " + std::to_string(part));
    }
    return sys;
}

std::string to_h_representation(const KPolytopeSystem& sys) {
    std::ostringstream os;
    os << "# composite hive polytope\n";
    os << "n " << sys.n << "\n";
    os << "dimension " << sys.dimension() << "\n";
    os << "variables";
    for (auto v : sys.vertices) os << " a" << v.i << "_" << v.j;
    os << "\n";
    os << "rows " << sys.rows.size() << "\n";
    for (const auto& r : sys.rows) {
        for (auto c : r.coeffs) os << c << ' ';
        os << (r.rel == KPolytopeSystem::Relation::Eq ? "=" : ">=") << ' ' << r.rhs << "  # " << r.tag << "\n";
    }
    return os.str();
}

nlohmann::json to_json(const KPolytopeSystem& sys) {
    nlohmann::json j;
    j["n"] = sys.n;
    j["dimension"] = sys.dimension();
    auto& vars = j["variables"] = nlohmann::json::array();
    for (auto v : sys.vertices) vars.push_back({v.i, v.j});
    auto& rows = j["rows"] = nlohmann::json::array();
    for (const auto& r : sys.rows)
        rows.push_back({{"coeffs", r.coeffs},
                        {"relation", r.rel == KPolytopeSystem::Relation::Eq ? "=" : ">="},
                        {"rhs", r.rhs},
                        {"tag", r.tag}});
    return j;
}

}  // namespace nlhive
