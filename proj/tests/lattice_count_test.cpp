#include <gtest/gtest.h>

#include <random>

#include "nlhive/errors.hpp"
#include "nlhive/lattice_count.hpp"

using namespace nlhive;

TEST(LatticeCount, Division) {
    EXPECT_EQ(floor_div(7, 2), 3);
    EXPECT_EQ(floor_div(-7, 2), -4);
    EXPECT_EQ(floor_div(7, -2), -4);
    EXPECT_EQ(ceil_div(7, 2), 4);
    EXPECT_EQ(ceil_div(-7, 2), -3);
    EXPECT_EQ(ceil_div(-7, -2), 4);
}

TEST(LatticeCount, Simplex) {
    // x, y >= 0, x + y <= 4: 15 points
    std::vector<Inequality> c{{{{0, 1}}, 0}, {{{1, 1}}, 0}, {{{0, -1}, {1, -1}}, -4}};
    LatticeCounter lc(2, c);
    EXPECT_EQ(lc.count().count, 15u);
    EXPECT_EQ(lc.static_upper(0), 4);
}

TEST(LatticeCount, InfeasibleAndEmptySystems) {
    LatticeCounter none(0, {});
    EXPECT_EQ(none.count().count, 1u);
    LatticeCounter contradiction(1, {{{{0, 1}}, 3}, {{{0, -1}}, -2}});
    EXPECT_FALSE(contradiction.feasible());
    EXPECT_EQ(contradiction.count().count, 0u);
    LatticeCounter constant_false(0, {{{}, 1}});
    EXPECT_EQ(constant_false.count().count, 0u);
}

TEST(LatticeCount, UnboundedIsRejected) {
    EXPECT_THROW(LatticeCounter(1, {{{{0, 1}}, 0}}), std::logic_error);
}

TEST(LatticeCount, BudgetExceeded) {
    // cube [0,99]^3 needs about 10^4 interior nodes
    std::vector<Inequality> c;
    for (int v = 0; v < 3; ++v) {
        c.push_back({{{v, 1}}, 0});
        c.push_back({{{v, -1}}, -99});
    }
    LatticeCounter lc(3, c);
    EXPECT_EQ(lc.count().count, 1'000'000u);
    EnumerationLimits tight;
    tight.node_budget = 5000;
    try {
        lc.count(tight);
        FAIL() << "budget not enforced";
    } catch (const BudgetExceeded& e) {
        EXPECT_GE(e.nodes_visited(), 5000u);
        EXPECT_LT(e.partial_count(), 1'000'000u);
    }
}

TEST(LatticeCount, WorkersAgree) {
    std::vector<Inequality> c{{{{0, 1}}, 0}, {{{1, 1}}, 0}, {{{2, 1}}, 0},
                              {{{0, -2}, {1, -3}, {2, -1}}, -40}};
    LatticeCounter lc(3, c);
    auto serial = lc.count().count;
    for (unsigned w : {2u, 3u, 5u}) {
        EnumerationLimits lim;
        lim.workers = w;
        EXPECT_EQ(lc.count(lim).count, serial);
    }
}

// Random small systems against plain enumeration of the bounding box.
TEST(LatticeCountProperty, MatchesBoxScan) {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> coeff(-3, 3), rhs(-6, 2);
    for (int trial = 0; trial < 300; ++trial) {
        const int nv = 3;
        std::vector<Inequality> c;
        for (int v = 0; v < nv; ++v) {
            c.push_back({{{v, 1}}, -4});
            c.push_back({{{v, -1}}, -4});
        }
        for (int k = 0; k < 4; ++k) {
            Inequality q;
            for (int v = 0; v < nv; ++v) q.terms.push_back({v, coeff(rng)});
            q.rhs = rhs(rng);
            c.push_back(q);
        }
        std::uint64_t brute = 0;
        for (int x = -4; x <= 4; ++x)
            for (int y = -4; y <= 4; ++y)
                for (int z = -4; z <= 4; ++z) {
                    std::int64_t p[3] = {x, y, z};
                    bool ok = true;
                    for (const auto& q : c) {
                        std::int64_t s = 0;
                        for (auto t : q.terms) s += t.coeff * p[t.var];
                        ok = ok && s >= q.rhs;
                    }
                    brute += ok;
                }
        LatticeCounter lc(nv, c);
        ASSERT_EQ(lc.count().count, brute) << "trial " << trial;
        std::uint64_t visited = 0;
        lc.for_each_point([&](std::span<const std::int64_t>) { ++visited; });
        ASSERT_EQ(visited, brute);
    }
}
