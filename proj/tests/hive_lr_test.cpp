#include <gtest/gtest.h>

#include "nlhive/errors.hpp"
#include "nlhive/hive_lr.hpp"

using namespace nlhive;

TEST(HiveLR, PrintedCoefficient) {
    EXPECT_EQ(count_lr({6, 5, 3}, {6, 4, 1}, {9, 7, 5, 4}, 4), 7u);
    EXPECT_EQ(schur_coefficient_oracle({6, 5, 3}, {6, 4, 1}, {9, 7, 5, 4}), 7u);
}

TEST(HiveLR, SmallCases) {
    EXPECT_EQ(count_lr({}, {}, {}, 1), 1u);
    EXPECT_EQ(count_lr({2, 1}, {2, 1}, {3, 2, 1}, 3), 2u);
    EXPECT_EQ(schur_coefficient_oracle({2, 1}, {2, 1}, {3, 2, 1}), 2u);
    EXPECT_EQ(count_lr_auto({1}, {1}, {2}), 1u);
    EXPECT_EQ(count_lr_auto({1}, {1}, {1, 1}), 1u);
    EXPECT_EQ(schur_coefficient_oracle({1}, {1}, {2}), 1u);
    EXPECT_EQ(schur_coefficient_oracle({1}, {1}, {1, 1}), 1u);
    EXPECT_EQ(count_lr_auto({5, 3}, {4, 1}, {9, 4}), schur_coefficient_oracle({5, 3}, {4, 1}, {9, 4}));
    EXPECT_EQ(count_lr_auto({5, 3}, {4, 1}, {9, 4}), 1u);
}

TEST(HiveLR, Kostka) {
    EXPECT_EQ(kostka({2, 1}, {1, 1, 1}), 2u);
    EXPECT_EQ(kostka({3, 2}, {2, 2, 1}), 2u);
    EXPECT_EQ(kostka({2, 2}, {1, 1, 1, 1}), 2u);
    EXPECT_EQ(kostka({3, 2, 1}, {1, 1, 1, 1, 1, 1}), 16u);
    EXPECT_EQ(kostka({3}, {1, 2}), 1u);  // content order does not matter
    EXPECT_EQ(kostka({1, 1}, {2}), 0u);
}

TEST(HiveLR, FrameTooSmall) {
    EXPECT_THROW(count_lr({1, 1}, {1}, {2, 1}, 1), ValidationError);
    EXPECT_THROW(count_lr({}, {}, {}, 0), ValidationError);
}

TEST(HiveLR, Vanishing) {
    EXPECT_EQ(count_lr({2}, {1}, {2}, 2), 0u);               // weights differ
    EXPECT_EQ(count_lr({1}, {1}, {1, 1, 0}, 3), 1u);
    EXPECT_EQ(count_lr({2}, {1}, {1, 1, 1}, 3), 0u);         // too long
    EXPECT_EQ(schur_coefficient_oracle({2}, {1}, {1, 1, 1}), 0u);
}

TEST(HiveLR, StretchedPolynomial) {
    Partition mu{6, 5, 3}, nu{6, 4, 1}, la{9, 7, 5, 4};
    for (std::int64_t t = 0; t <= 6; ++t) {
        std::uint64_t expect = static_cast<std::uint64_t>((t + 1) * (5 * t * t + 10 * t + 6) / 6);
        EXPECT_EQ(count_lr(mu.stretch(t), nu.stretch(t), la.stretch(t), 4), expect) << "t=" << t;
    }
}

TEST(HiveLR, DebugIterationMatchesCount) {
    std::uint64_t seen = 0;
    for_each_lr_hive({2, 1}, {2, 1}, {3, 2, 1}, 3, [&](const std::map<geom::Vertex, std::int64_t>& h) {
        ++seen;
        EXPECT_EQ(h.at({0, 0}), 0);
        EXPECT_EQ(h.at({3, 3}), 6);
        // edge labels along the bottom row of every hive decrease: check one line
        EXPECT_GE(h.at({0, 1}) - h.at({0, 0}), h.at({1, 2}) - h.at({1, 1}));
    });
    EXPECT_EQ(seen, 2u);
}

// Exhaustive over |mu|, |nu| <= 6, with every la of the right weight and
// length; symmetry and frame independence checked on the same sweep.
TEST(HiveLRSweep, OracleSymmetryFrame) {
    std::vector<Partition> small;
    for (int w = 0; w <= 6; ++w)
        for (auto& p : partitions_of(w, 6, w)) small.push_back(p);
    int checked = 0;
    for (const auto& mu : small) {
        for (const auto& nu : small) {
            auto L = mu.length() + nu.length();
            for (const auto& la : partitions_of(mu.weight() + nu.weight(), std::max<std::size_t>(L, 1), 100)) {
                auto c = count_lr_auto(mu, nu, la);
                ASSERT_EQ(c, schur_coefficient_oracle(mu, nu, la)) << mu << nu << la;
                ASSERT_EQ(c, count_lr_auto(nu, mu, la));
                int n = static_cast<int>(std::max({mu.length(), nu.length(), la.length(), std::size_t{1}}));
                if (n <= 4) ASSERT_EQ(count_lr(mu, nu, la, n), count_lr(mu, nu, la, n + 1)) << mu << nu << la;
                ++checked;
            }
        }
    }
    EXPECT_GT(checked, 10000);
}
