#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "nlhive/hive_geometry.hpp"
#include "nlhive/lattice_count.hpp"
#include "nlhive/partition.hpp"

namespace nlhive {

/// Composite n-hive on {(i,j): 0 <= i <= j <= 2n, j - i <= n}.
///
/// Bottom row a(i,i): partial sums of mu then nu. Top row a(i,n+i): |alpha|
/// plus partial sums of lambda, with |alpha| = (|mu|+|nu|-|lambda|)/2. The
/// right side a(n+j,2n) is a(n,2n) + a(0,j) (the alpha boundary read twice),
/// so only the left side and the interior are unknown: 3n(n-1)/2 of them.
struct CompositeFrame {
    int n = 0;
    std::map<geom::Vertex, geom::Affine> label;
    std::vector<geom::Vertex> free;  // unknown index -> vertex, in sweep order
    std::vector<Inequality> constraints;
};

/// Throws ValidationError when nl_vanishes() or a partition is longer than n.
CompositeFrame make_composite_frame(const Partition& mu, const Partition& nu, const Partition& la, int n);

/// True when the weights |alpha|, |beta|, |gamma| forced by the triple are not
/// all nonnegative integers.
bool nl_vanishes(const Partition& mu, const Partition& nu, const Partition& la);

std::uint64_t count_nl_hive(const Partition& mu, const Partition& nu, const Partition& la,
                            const EnumerationLimits& limits = {});

/// Same number from sum_{alpha,beta,gamma} c^mu_{alpha,beta} c^nu_{alpha,gamma} c^la_{beta,gamma}.
std::uint64_t count_nl_lrsum(const Partition& mu, const Partition& nu, const Partition& la,
                             const EnumerationLimits& limits = {});

/// H-representation over all k = (3n+2)(n+1)/2 vertex labels.
struct KPolytopeSystem {
    enum class Relation { Eq, Ge };
    struct Row {
        std::vector<std::int64_t> coeffs;  // length k
        Relation rel;
        std::int64_t rhs;
        std::string tag;
    };

    int n = 0;
    std::vector<geom::Vertex> vertices;  // column -> vertex, lexicographic
    std::vector<Row> rows;

    int dimension() const { return static_cast<int>(vertices.size()); }
    int column(geom::Vertex v) const;
};

KPolytopeSystem k_polytope(const Partition& mu, const Partition& nu, const Partition& la);

/// Plain text: header lines, then one row per constraint
/// "c_1 ... c_k (=|>=) rhs". Format is described in docs/kpolytope-format.md.
std::string to_h_representation(const KPolytopeSystem& sys);
nlohmann::json to_json(const KPolytopeSystem& sys);

}  // namespace nlhive
