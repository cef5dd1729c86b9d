#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace nlhive {

struct LinearTerm {
    int var;
    std::int64_t coeff;
};

/// sum(coeff * x[var]) >= rhs
struct Inequality {
    std::vector<LinearTerm> terms;
    std::int64_t rhs = 0;
};

struct EnumerationLimits {
    std::uint64_t node_budget = 1'000'000'000ULL;
    std::chrono::milliseconds time_budget = std::chrono::minutes(10);
    unsigned workers = 1;
};

struct EnumerationStats {
    std::uint64_t nodes = 0;
    std::uint64_t count = 0;
};

/// Counts integer points of {x : A x >= b} by depth-first search over the
/// variables in index order.
///
/// Each constraint is attached to the highest-indexed variable it mentions; at
/// that depth the others are fixed, so it becomes an integer bound on the
/// current variable. The feasible interval at a level is the intersection of
/// those bounds with a static box obtained beforehand by bound propagation.
/// The last variable is never iterated: its interval width is added directly.
///
/// Construction throws std::logic_error if propagation cannot bound every
/// variable (the system is not a polytope in this variable order).
class LatticeCounter {
public:
    LatticeCounter(int num_vars, std::vector<Inequality> constraints);

    int num_vars() const noexcept { return num_vars_; }

    /// False when propagation alone proved the system infeasible.
    bool feasible() const noexcept { return feasible_; }

    /// Static bounds found by propagation (valid only when feasible()).
    std::int64_t static_lower(int var) const { return lo_.at(var); }
    std::int64_t static_upper(int var) const { return hi_.at(var); }

    /// Throws BudgetExceeded when the node or time budget runs out.
    EnumerationStats count(const EnumerationLimits& limits = {}) const;

    /// Visits every integer point; intended for debugging and small systems.
    void for_each_point(const std::function<void(std::span<const std::int64_t>)>& visit,
                        const EnumerationLimits& limits = {}) const;

private:
    struct Attached {
        std::int64_t coeff;        // coefficient of the level variable
        std::int64_t rhs;
        std::uint32_t first_other;  // index range into others_
        std::uint32_t last_other;
    };

    struct Level {
        std::vector<Attached> constraints;
    };

    bool propagate(std::vector<Inequality>& constraints);

    int num_vars_;
    bool feasible_ = true;
    std::vector<std::int64_t> lo_, hi_;
    std::vector<Level> levels_;
    std::vector<LinearTerm> others_;

    friend class LatticeWalker;
};

std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t ceil_div(std::int64_t a, std::int64_t b);

}  // namespace nlhive
