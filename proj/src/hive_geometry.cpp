#include "nlhive/hive_geometry.hpp"

#include <algorithm>
#include <map>

#include "nlhive/errors.hpp"

namespace nlhive::geom {

namespace {

template <class InRegion, class PieceOf>
std::vector<Triangle> triangles_in(int max_j, InRegion in_region, PieceOf piece_of) {
    std::vector<Triangle> out;
    for (int i = 0; i <= max_j; ++i) {
        for (int j = i; j <= max_j; ++j) {
            Triangle up{{Vertex{i, j}, Vertex{i, j + 1}, Vertex{i + 1, j + 1}}};
            Triangle down{{Vertex{i, j}, Vertex{i + 1, j}, Vertex{i + 1, j + 1}}};
            for (auto* t : {&up, &down}) {
                if (std::all_of(t->v.begin(), t->v.end(), [&](Vertex v) { return in_region(v); })) {
                    t->piece = piece_of(*t);
                    out.push_back(*t);
                }
            }
        }
    }
    return out;
}

}  // namespace

std::vector<Triangle> lr_triangles(int n) {
    return triangles_in(
        n, [n](Vertex v) { return 0 <= v.i && v.i <= v.j && v.j <= n; }, [](const Triangle&) { return 0; });
}

std::vector<Triangle> composite_triangles(int n) {
    auto in_region = [n](Vertex v) { return 0 <= v.i && v.i <= v.j && v.j <= 2 * n && v.j - v.i <= n; };
    auto piece_of = [n](const Triangle& t) {
        bool mu = true, nu = true;
        for (auto v : t.v) {
            mu = mu && v.j <= n;
            nu = nu && v.i >= n;
        }
        if (mu) return int(kMu);
        if (nu) return int(kNu);
        return int(kLambda);
    };
    return triangles_in(2 * n, in_region, piece_of);
}

std::vector<Rhombus> rhombi(const std::vector<Triangle>& triangles) {
    // edge (sorted vertex pair) -> triangles containing it
    std::map<std::pair<Vertex, Vertex>, std::vector<std::size_t>> by_edge;
    for (std::size_t k = 0; k < triangles.size(); ++k) {
        const auto& v = triangles[k].v;
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) by_edge[std::minmax(v[a], v[b])].push_back(k);
    }
    std::vector<Rhombus> out;
    for (const auto& [edge, tris] : by_edge) {
        if (tris.size() != 2) continue;
        const auto& t0 = triangles[tris[0]];
        const auto& t1 = triangles[tris[1]];
        if (t0.piece != t1.piece) continue;
        auto apex = [&](const Triangle& t) {
            for (auto v : t.v)
                if (v != edge.first && v != edge.second) return v;
            throw std::logic_error("degenerate triangle");
        };
        out.push_back(Rhombus{{edge.first, edge.second}, {apex(t0), apex(t1)}, t0.piece});
    }
    return out;
}

Inequality rhombus_inequality(const Rhombus&, const Affine& o0, const Affine& o1, const Affine& a0,
                              const Affine& a1) {
    Inequality ineq;
    for (auto* e : {&o0, &o1})
        for (auto t : e->terms) ineq.terms.push_back(t);
    for (auto* e : {&a0, &a1})
        for (auto t : e->terms) ineq.terms.push_back({t.var, -t.coeff});
    std::int64_t c = checked::sub(checked::add(o0.constant, o1.constant), checked::add(a0.constant, a1.constant));
    ineq.rhs = checked::sub(0, c);
    return ineq;
}

}  // namespace nlhive::geom
