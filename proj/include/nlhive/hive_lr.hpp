#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "nlhive/hive_geometry.hpp"
#include "nlhive/lattice_count.hpp"
#include "nlhive/partition.hpp"

namespace nlhive {

/// Boundary of an integer n-hive with vertices (i,j), 0 <= i <= j <= n:
/// partial sums of mu up the left side, of lambda along the bottom, and |mu|
/// plus partial sums of nu down the right side. The interior vertices
/// 1 <= i < j <= n-1 are the unknowns, numbered row by row.
struct HiveFrame {
    int n = 0;
    std::map<geom::Vertex, geom::Affine> label;  // every vertex, boundary ones constant
    std::vector<geom::Vertex> free;              // unknown index -> vertex
    std::vector<Inequality> constraints;         // one per rhombus
};

/// Builds the frame; throws ValidationError if a partition is longer than n
/// or n < 1.
HiveFrame make_hive_frame(const Partition& mu, const Partition& nu, const Partition& la, int n);

/// c^la_{mu,nu} as the number of integer n-hives with the given boundary.
std::uint64_t count_lr(const Partition& mu, const Partition& nu, const Partition& la, int n,
                       const EnumerationLimits& limits = {});

/// count_lr in the smallest frame that holds all three partitions.
std::uint64_t count_lr_auto(const Partition& mu, const Partition& nu, const Partition& la,
                            const EnumerationLimits& limits = {});

/// Independent check: expands s_mu * s_nu into monomials via Kostka numbers in
/// max(l(la), l(mu)+l(nu)) variables and peels off Schur functions from the
/// lexicographically largest monomial down to la.
std::uint64_t schur_coefficient_oracle(const Partition& mu, const Partition& nu, const Partition& la);

/// Number of semistandard tableaux of the given shape and content.
std::uint64_t kostka(const Partition& shape, std::vector<std::int64_t> content);

#ifdef NLHIVE_DEBUG_HIVES
/// Materialises every hive as a map vertex -> label. Debug builds only.
inline void for_each_lr_hive(const Partition& mu, const Partition& nu, const Partition& la, int n,
                             const std::function<void(const std::map<geom::Vertex, std::int64_t>&)>& visit) {
    auto frame = make_hive_frame(mu, nu, la, n);
    if (la.weight() != mu.weight() + nu.weight()) return;
    LatticeCounter counter(static_cast<int>(frame.free.size()), frame.constraints);
    counter.for_each_point([&](std::span<const std::int64_t> x) {
        std::map<geom::Vertex, std::int64_t> h;
        for (const auto& [v, e] : frame.label) {
            std::int64_t val = e.constant;
            for (auto t : e.terms) val += t.coeff * x[t.var];
            h[v] = val;
        }
        visit(h);
    });
}
#endif

}  // namespace nlhive
