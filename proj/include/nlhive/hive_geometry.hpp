#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <vector>

#include "nlhive/lattice_count.hpp"

// Triangular-lattice bookkeeping shared by the LR hive and the composite hive.
//
// Vertex (i,j) is drawn with i counting up-right steps and j counting up-left
// steps from the bottom-left corner; elementary triangles are
//   up   U(i,j) = {(i,j), (i,j+1), (i+1,j+1)}
//   down D(i,j) = {(i,j), (i+1,j), (i+1,j+1)}.
// A rhombus is two triangles of the same piece sharing an edge. Its obtuse
// corners are the ends of the shared edge; the hive condition is
//   obtuse + obtuse >= acute + acute.

namespace nlhive::geom {

struct Vertex {
    int i = 0, j = 0;
    auto operator<=>(const Vertex&) const = default;
};

struct Triangle {
    std::array<Vertex, 3> v;
    int piece = 0;
};

struct Rhombus {
    std::array<Vertex, 2> obtuse;
    std::array<Vertex, 2> acute;
    int piece = 0;
};

/// Triangles of the LR n-hive {0 <= i <= j <= n}, all in piece 0.
std::vector<Triangle> lr_triangles(int n);

enum Piece : int { kMu = 0, kLambda = 1, kNu = 2 };

/// Triangles of the composite n-hive {0 <= i <= j <= 2n, j - i <= n}, tagged
/// with the constituent they belong to: mu (j <= n), lambda (i <= n <= j) or
/// nu (i >= n).
std::vector<Triangle> composite_triangles(int n);

/// Every rhombus formed by two triangles of one piece; pairs that straddle
/// two pieces are left out.
std::vector<Rhombus> rhombi(const std::vector<Triangle>& triangles);

/// A vertex label as an affine function of the free variables.
struct Affine {
    std::int64_t constant = 0;
    std::vector<LinearTerm> terms;
};

/// obtuse - acute >= 0 written over the free variables.
Inequality rhombus_inequality(const Rhombus& r, const Affine& o0, const Affine& o1, const Affine& a0,
                              const Affine& a1);

}  // namespace nlhive::geom
