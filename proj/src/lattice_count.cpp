#include "nlhive/lattice_count.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <stdexcept>
#include <thread>

#include "nlhive/errors.hpp"

namespace nlhive {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
    return q;
}

namespace {

using i128 = __int128;

// Values this large would make the per-level sums unsafe in int64.
constexpr std::int64_t kMagnitudeGuard = std::int64_t{1} << 52;

i128 floor_div128(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

i128 ceil_div128(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
    return q;
}

}  // namespace

LatticeCounter::LatticeCounter(int num_vars, std::vector<Inequality> constraints)
    : num_vars_(num_vars), lo_(num_vars, 0), hi_(num_vars, 0), levels_(num_vars) {
    if (num_vars < 0) throw std::invalid_argument("negative variable count");

    // merge repeated variables, drop zero coefficients
    for (auto& c : constraints) {
        std::map<int, std::int64_t> merged;
        for (auto [v, a] : c.terms) {
            if (v < 0 || v >= num_vars) throw std::invalid_argument("constraint mentions unknown variable");
            merged[v] = checked::add(merged[v], a);
        }
        c.terms.clear();
        for (auto [v, a] : merged)
            if (a != 0) c.terms.push_back({v, a});
    }

    if (!propagate(constraints)) {
        feasible_ = false;
        return;
    }

    for (const auto& c : constraints) {
        if (c.terms.empty()) continue;
        const auto& top = c.terms.back();  // terms are sorted by variable
        Attached a{top.coeff, c.rhs, static_cast<std::uint32_t>(others_.size()), 0};
        for (std::size_t k = 0; k + 1 < c.terms.size(); ++k) others_.push_back(c.terms[k]);
        a.last_other = static_cast<std::uint32_t>(others_.size());
        levels_[top.var].constraints.push_back(a);
    }
}

bool LatticeCounter::propagate(std::vector<Inequality>& constraints) {
    std::vector<bool> has_lo(num_vars_, false), has_hi(num_vars_, false);
    std::vector<i128> lo(num_vars_, 0), hi(num_vars_, 0);

    for (const auto& c : constraints)
        if (c.terms.empty() && c.rhs > 0) return false;

    const int max_passes = 64 + 8 * num_vars_;
    bool changed = true;
    for (int pass = 0; changed && pass < max_passes; ++pass) {
        changed = false;
        for (const auto& c : constraints) {
            // Largest achievable value of the whole left side, with the number
            // of terms whose maximum is unbounded.
            i128 sum_max = 0;
            int unbounded = 0;
            int unbounded_var = -1;
            for (auto [v, a] : c.terms) {
                if (a > 0 ? has_hi[v] : has_lo[v]) {
                    sum_max += a * (a > 0 ? hi[v] : lo[v]);
                } else {
                    ++unbounded;
                    unbounded_var = v;
                }
            }
            if (unbounded > 1) continue;
            for (auto [v, a] : c.terms) {
                if (unbounded == 1 && v != unbounded_var) continue;
                i128 others = sum_max;
                if (unbounded == 0) others -= a * (a > 0 ? hi[v] : lo[v]);
                // a * x >= rhs - others
                i128 need = i128(c.rhs) - others;
                if (a > 0) {
                    i128 b = ceil_div128(need, a);
                    if (!has_lo[v] || b > lo[v]) {
                        lo[v] = b;
                        has_lo[v] = true;
                        changed = true;
                    }
                } else {
                    i128 b = floor_div128(need, a);
                    if (!has_hi[v] || b < hi[v]) {
                        hi[v] = b;
                        has_hi[v] = true;
                        changed = true;
                    }
                }
                if (has_lo[v] && has_hi[v] && lo[v] > hi[v]) return false;
            }
        }
    }

    for (int v = 0; v < num_vars_; ++v) {
        if (!has_lo[v] || !has_hi[v])
            throw std::logic_error("bound propagation left variable " + std::to_string(v) + " unbounded");
        if (lo[v] < -kMagnitudeGuard || hi[v] > kMagnitudeGuard)
            throw OverflowError("variable bounds too large for exact enumeration");
        lo_[v] = static_cast<std::int64_t>(lo[v]);
        hi_[v] = static_cast<std::int64_t>(hi[v]);
    }
    return true;
}

// Depth-first walk shared by count() and for_each_point().
class LatticeWalker {
public:
    LatticeWalker(const LatticeCounter& lc, const EnumerationLimits& limits, std::atomic<std::uint64_t>& shared_nodes,
                  std::atomic<bool>& stop)
        : lc_(lc),
          limits_(limits),
          shared_nodes_(shared_nodes),
          stop_(stop),
          x_(lc.num_vars_, 0),
          deadline_(std::chrono::steady_clock::now() + limits.time_budget) {}

    // Interval for level k given x_[0..k-1]; empty when lo > hi.
    std::pair<std::int64_t, std::int64_t> interval(int k) const {
        std::int64_t lo = lc_.lo_[k], hi = lc_.hi_[k];
        for (const auto& a : lc_.levels_[k].constraints) {
            std::int64_t s = a.rhs;
            for (auto i = a.first_other; i < a.last_other; ++i) {
                const auto& t = lc_.others_[i];
                s -= t.coeff * x_[t.var];
            }
            if (a.coeff > 0)
                lo = std::max(lo, ceil_div(s, a.coeff));
            else
                hi = std::min(hi, floor_div(s, a.coeff));
            if (lo > hi) break;
        }
        return {lo, hi};
    }

    void tick() {
        ++local_nodes_;
        if ((local_nodes_ & 0xfff) == 0) flush();
    }

    void flush() {
        std::uint64_t total = shared_nodes_.fetch_add(local_nodes_ - flushed_) + (local_nodes_ - flushed_);
        flushed_ = local_nodes_;
        if (stop_.load(std::memory_order_relaxed)) throw Stop{};
        if (total > limits_.node_budget || std::chrono::steady_clock::now() > deadline_) {
            stop_ = true;
            throw Stop{};
        }
    }

    void count_from(int k) {
        tick();
        auto [lo, hi] = interval(k);
        if (lo > hi) return;
        if (k + 1 == lc_.num_vars_) {
            count_ = checked::add(count_, static_cast<std::uint64_t>(hi - lo + 1));
            return;
        }
        for (std::int64_t v = lo; v <= hi; ++v) {
            x_[k] = v;
            count_from(k + 1);
        }
    }

    // Level 0 restricted to values congruent to `offset` modulo `stride`.
    void count_root(unsigned offset, unsigned stride) {
        if (lc_.num_vars_ == 0) {
            if (offset == 0) count_ = 1;
            return;
        }
        if (lc_.num_vars_ == 1) {
            if (offset != 0) return;
            count_from(0);
            return;
        }
        tick();
        auto [lo, hi] = interval(0);
        for (std::int64_t v = lo + offset; v <= hi; v += stride) {
            x_[0] = v;
            count_from(1);
        }
    }

    void visit_from(int k, const std::function<void(std::span<const std::int64_t>)>& visit) {
        if (k == lc_.num_vars_) {
            visit(std::span<const std::int64_t>(x_));
            return;
        }
        tick();
        auto [lo, hi] = interval(k);
        for (std::int64_t v = lo; v <= hi; ++v) {
            x_[k] = v;
            visit_from(k + 1, visit);
        }
    }

    struct Stop {};

    std::uint64_t count_ = 0;
    std::uint64_t local_nodes_ = 0;
    std::uint64_t flushed_ = 0;

private:
    const LatticeCounter& lc_;
    const EnumerationLimits& limits_;
    std::atomic<std::uint64_t>& shared_nodes_;
    std::atomic<bool>& stop_;
    std::vector<std::int64_t> x_;
    std::chrono::steady_clock::time_point deadline_;
};

EnumerationStats LatticeCounter::count(const EnumerationLimits& limits) const {
    if (!feasible_) return {0, 0};
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> stop{false};
    unsigned workers = std::max(1u, limits.workers);

    std::vector<LatticeWalker> walkers;
    walkers.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) walkers.emplace_back(*this, limits, nodes, stop);
    std::vector<bool> stopped(workers, false);

    auto run = [&](unsigned w) {
        try {
            walkers[w].count_root(w, workers);
            walkers[w].flush();
        } catch (const LatticeWalker::Stop&) {
            stopped[w] = true;
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w);
        for (auto& t : threads) t.join();
    }

    EnumerationStats st;
    st.nodes = nodes.load();
    bool any_stopped = false;
    for (unsigned w = 0; w < workers; ++w) {
        st.count = checked::add(st.count, walkers[w].count_);
        any_stopped = any_stopped || stopped[w];
    }
    if (any_stopped)
        throw BudgetExceeded("enumeration budget exhausted after " + std::to_string(st.nodes) + " nodes", st.nodes,
                             st.count);
    return st;
}

void LatticeCounter::for_each_point(const std::function<void(std::span<const std::int64_t>)>& visit,
                                    const EnumerationLimits& limits) const {
    if (!feasible_) return;
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> stop{false};
    LatticeWalker w(*this, limits, nodes, stop);
    try {
        w.visit_from(0, visit);
    } catch (const LatticeWalker::Stop&) {
        throw BudgetExceeded("enumeration budget exhausted", nodes.load(), 0);
    }
}

}  // namespace nlhive
