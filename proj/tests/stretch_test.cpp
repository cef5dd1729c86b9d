#include <gtest/gtest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "nlhive/khive_nl.hpp"
#include "nlhive/stretch.hpp"

using namespace nlhive;

namespace {

using Seq = std::vector<std::uint64_t>;

QPoly P(const char* text) { return parse_polynomial(text, 't'); }
RationalFunction GF(const char* text) { return parse_rational_function(text, 'w'); }

std::vector<mpz_class> Z(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

Partition random_partition(std::mt19937& rng, int max_len, int max_part) {
    std::uniform_int_distribution<int> part(0, max_part);
    std::vector<std::int64_t> v(max_len);
    for (auto& x : v) x = part(rng);
    std::sort(v.begin(), v.end(), std::greater<>());
    return Partition(v);
}

}  // namespace

TEST(StretchedSequence, Examples) {
    // P_e(2) = 4*114/24, P_o(3) = 4*258/24, P_e(4) = 6*328/24
    EXPECT_EQ(stretched_sequence({5, 3}, {4, 1}, {5, 2}, 4), (Seq{1, 6, 19, 43, 82}));
    // v2 = P_e(2) = 4 * 180 / 48
    EXPECT_EQ(P("(t+2)(19t^2+40t+24)/48")(mpq_class(2)), 15);
    EXPECT_EQ(stretched_sequence({5, 3}, {4, 1}, {4, 2}, 3), (Seq{1, 0, 15, 0}));
    EXPECT_EQ(stretched_sequence({}, {}, {}, 3), (Seq{1, 1, 1, 1}));
    EXPECT_THROW(stretched_sequence({}, {}, {}, -1), ValidationError);
}

TEST(StretchedSequence, ThreadsAgree) {
    SequenceOptions opts;
    opts.threads = 3;
    EXPECT_EQ(stretched_sequence({2, 1, 1}, {2, 1, 1}, {2, 1, 1}, 7, opts),
              stretched_sequence({2, 1, 1}, {2, 1, 1}, {2, 1, 1}, 7));
}

TEST(StretchedSequence, BudgetGivesPartialPrefix) {
    SequenceOptions opts;
    opts.limits.node_budget = 50;
    try {
        stretched_sequence({2, 1, 1}, {2, 1, 1}, {2, 1, 1}, 12, opts);
        FAIL() << "expected a budget error";
    } catch (const PartialSequence& e) {
        auto full = stretched_sequence({2, 1, 1}, {2, 1, 1}, {2, 1, 1}, 12);
        ASSERT_LT(e.computed().size(), full.size());
        for (std::size_t t = 0; t < e.computed().size(); ++t) EXPECT_EQ(e.computed()[t], full[t]);
    }
}

TEST(StretchedSequence, DiskCache) {
    auto dir = std::filesystem::temp_directory_path() / ("nlhive-cache-test-" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    SequenceOptions opts;
    opts.cache_dir = dir;
    auto first = stretched_sequence({5, 3}, {4, 1}, {5, 2}, 3, opts);
    EXPECT_EQ(first, (Seq{1, 6, 19, 43}));
    std::size_t files = 0;
    for (auto& e : std::filesystem::directory_iterator(dir)) {
        ++files;
        EXPECT_EQ(e.path().string().find(".tmp."), std::string::npos);
    }
    EXPECT_EQ(files, 4u);
    // the key is symmetric: a permuted triple hits the same entries
    {
        std::ofstream out(dir / "nl_8,2_10,4_10,6");
        out << "nl_8,2_10,4_10,6 999\n";
    }
    EXPECT_EQ(stretched_sequence({4, 1}, {5, 2}, {5, 3}, 3, opts), (Seq{1, 6, 999, 43}));
    std::filesystem::remove_all(dir);
}

TEST(Fit, SmallExamples) {
    auto seq = stretched_sequence({1, 1}, {1, 1}, {1, 1}, required_samples(3) - 1);
    auto qp = fit_quasi_polynomial(seq, 3);
    EXPECT_EQ(qp.p_even, P("(t+2)/2"));
    EXPECT_EQ(qp.p_odd, P("(t+1)/2"));

    Seq zeros(10, 0);
    zeros[0] = 1;
    EXPECT_TRUE(fit_quasi_polynomial(zeros, 2).is_zero());
    EXPECT_TRUE(fit_quasi_polynomial(Seq(10, 0), 2).is_zero());
}

TEST(Fit, PrintedPairs) {
    auto s9 = stretched_sequence({5, 3}, {4, 1}, {5, 2}, 14);
    auto q9 = fit_quasi_polynomial(s9, 3);
    EXPECT_EQ(q9.p_even, P("(t+2)(14t^2+23t+12)/24"));
    EXPECT_EQ(q9.p_odd, P("(t+1)(14t^2+37t+21)/24"));

    auto s10 = stretched_sequence({5, 3}, {4, 1}, {4, 2}, 14);
    auto q10 = fit_quasi_polynomial(s10, 3);
    EXPECT_EQ(q10.p_even, P("(t+2)(19t^2+40t+24)/48"));
    EXPECT_TRUE(q10.p_odd.is_zero());
}

TEST(Fit, Errors) {
    Seq powers;
    for (int t = 0; t < 12; ++t) powers.push_back(1ULL << t);
    try {
        fit_quasi_polynomial(powers, 3);
        FAIL();
    } catch (const FitError& e) {
        EXPECT_EQ(e.t(), 8);
    }
    EXPECT_THROW(fit_quasi_polynomial(Seq(5, 1), 3), ValidationError);
}

TEST(GeneratingFunction, Examples) {
    QuasiPolynomial2 q9{P("(t+2)(14t^2+23t+12)/24"), P("(t+1)(14t^2+37t+21)/24")};
    auto g9 = to_generating_function(q9);
    EXPECT_EQ(g9.numerator, (ZPoly{1, 3, 3}));
    EXPECT_EQ(g9.d1, 3);
    EXPECT_EQ(g9.d2, 1);
    EXPECT_EQ(render(g9), "(3w^2+3w+1)/((1-w)^3(1-w^2))");

    QuasiPolynomial2 q10{P("(t+2)(19t^2+40t+24)/48"), {}};
    auto g10 = to_generating_function(q10);
    EXPECT_EQ(render(g10), "(7w^4+11w^2+1)/(1-w^2)^4");
    EXPECT_TRUE(gf_equivalent(g10, GF("(7w^4+11w^2+1)/(1-w^2)^4")));

    auto g1 = to_generating_function({P("1"), P("1")});
    EXPECT_EQ(render(g1), "1/(1-w)");
    EXPECT_EQ(g1.d1, 1);
    EXPECT_EQ(g1.d2, 0);

    auto g0 = to_generating_function({});
    EXPECT_TRUE(g0.is_zero());
    EXPECT_EQ(render(g0), "0");
}

TEST(GeneratingFunction, NotLowestTermsDisplaysCompareByIdentity) {
    // table displays sometimes keep a common factor of (1+w)
    auto g = to_generating_function({P("(t+2)(14t^2+23t+12)/24"), P("(t+1)(14t^2+37t+21)/24")});
    EXPECT_TRUE(gf_equivalent(g, GF("(3w^2+3w+1)(1+w)/((1-w)^3(1-w^2)(1+w))")));
    EXPECT_FALSE(gf_equivalent(g, GF("(3w^2+3w+2)/((1-w)^3(1-w^2))")));
}

TEST(ExpandGF, Examples) {
    EXPECT_EQ(expand_gf({ZPoly{1}, 1, 1}, 5), Z({1, 1, 2, 2, 3, 3}));
    // 10 + 11*4 + 7, also P_e(4) = 6*488/48
    EXPECT_EQ(expand_gf({ZPoly{1, 0, 11, 0, 7}, 0, 4}, 4), Z({1, 0, 15, 0, 61}));
    EXPECT_EQ(expand_gf({ZPoly{1}, 1, 0}, 3), Z({1, 1, 1, 1}));
    EXPECT_EQ(expand_gf({}, 2), Z({0, 0, 0}));
}

TEST(Conjectures, Examples) {
    auto r11 = analyse_stretch({1, 1}, {1, 1}, {1, 1});
    const auto& e2 = r11.report.item("E(ii)");
    EXPECT_EQ(e2.verdict, Verdict::NotApplicable);
    EXPECT_NE(e2.note.find("n=1, n_2=2"), std::string::npos);
    EXPECT_NE(e2.note.find("premise not met"), std::string::npos);
    EXPECT_FALSE(r11.report.any_violated());

    auto odd = analyse_stretch({5, 3}, {4, 1}, {4, 2});
    EXPECT_EQ(odd.report.parity, Parity::Odd);
    for (const char* id : {"O(i)", "O(iii)", "O(iv)", "O(v)"}) EXPECT_EQ(odd.report.item(id).verdict, Verdict::Holds) << id;
    EXPECT_EQ(odd.gf.d1, 0);

    auto r42 = analyse_stretch({3, 1}, {3, 1}, {4, 2});
    for (const char* id : {"E(i)", "E(iii)", "E(iv)", "E(v)"}) EXPECT_EQ(r42.report.item(id).verdict, Verdict::Holds) << id;
    EXPECT_EQ(r42.qp.p_even, P("(t+1)(t+2)(t+3)/6"));
    EXPECT_EQ(r42.qp.p_odd, P("(t+1)(t+2)(t+3)/6"));
}

TEST(Conjectures, ViolationsNeedWitnesses) {
    // synthetic data: positive at t=1, zero at t=3
    Seq s{1, 2, 3, 0, 5, 6, 7, 8};
    auto rep = check_conjectures({1}, {1}, {}, s, std::nullopt, std::nullopt, "synthetic");
    const auto& e1 = rep.item("E(i)");
    EXPECT_EQ(e1.verdict, Verdict::Violated);
    EXPECT_EQ(e1.witness_t, 3);
    EXPECT_EQ(rep.item("E(iv)").verdict, Verdict::NotApplicable);

    Seq ones{1, 1, 1, 1, 2};
    auto rep2 = check_conjectures({1}, {1}, {}, ones, std::nullopt, std::nullopt, "synthetic");
    EXPECT_EQ(rep2.item("E(ii)").verdict, Verdict::Violated);
    EXPECT_EQ(rep2.item("E(ii)").witness_t, 4);

    // negative quasi-polynomial coefficient
    Seq powers;
    for (int t = 0; t < 12; ++t) powers.push_back(1ULL << t);
    QuasiPolynomial2 neg{P("1-t"), P("1")};
    auto rep3 = check_conjectures({1}, {1}, {}, powers, neg, to_generating_function({P("1"), P("1")}));
    EXPECT_EQ(rep3.item("E(iv)").verdict, Verdict::Violated);
    EXPECT_NE(rep3.item("E(iv)").note.find("t^1"), std::string::npos);
}

TEST(Stability, DegenerateRange) {
    StabilityConfig cfg;
    cfg.mu = {3, 3};
    cfg.nu = {2, 1};
    cfg.la = {3, 2};
    cfg.a_min = cfg.a_max = 2;
    auto table = stability_scan(cfg);
    ASSERT_EQ(table.rows.size(), 1u);
    EXPECT_FALSE(table.onset_even);
    EXPECT_FALSE(table.onset_odd);
    EXPECT_EQ(render(table.rows[0].gf), "(3w^2+3w+1)/((1-w)^3(1-w^2))");
}

TEST(Stability, Triples) {
    StabilityConfig cfg;
    cfg.mu = {3, 3};
    cfg.nu = {2, 1};
    cfg.la = {3, 2};
    auto t = stability_triple(cfg, 2);
    EXPECT_EQ(t[0], (Partition{5, 3}));
    EXPECT_EQ(t[1], (Partition{4, 1}));
    EXPECT_EQ(t[2], (Partition{5, 2}));
    cfg.mode = StabilityConfig::Mode::Prepend;
    cfg.mu = cfg.nu = cfg.la = {2};
    EXPECT_EQ(stability_triple(cfg, 6)[0], (Partition{6, 2}));
    EXPECT_THROW(stability_triple(cfg, 1), ValidationError);
}

TEST(Stability, HeadIncrementOnsets) {
    StabilityConfig cfg;
    cfg.mu = {3, 3};
    cfg.nu = {2, 1};
    cfg.la = {3, 2};
    cfg.a_min = 0;
    cfg.a_max = 7;
    auto table = stability_scan(cfg);
    EXPECT_EQ(table.onset_even, 4);
    EXPECT_EQ(table.onset_odd, 5);
    EXPECT_TRUE(gf_equivalent(table.rows[6].gf, GF("(4w+1)/(1-w)^4")));
    EXPECT_EQ(table.rows[6].qp.p_even, P("(t+1)(t+2)(5t+3)/6"));
    EXPECT_TRUE(gf_equivalent(table.rows[7].gf, GF("(17w^4+22w^2+1)/(1-w^2)^4")));
}

TEST(Json, RoundTrip) {
    auto r = analyse_stretch({5, 3}, {4, 1}, {5, 2});
    auto j = to_json(r);
    EXPECT_EQ(j["gf"]["d1"], 3);
    EXPECT_EQ(j["p_even"][0], "1");
    auto back = stretch_result_from_json(nlohmann::json::parse(j.dump()));
    EXPECT_EQ(back.mu, r.mu);
    EXPECT_EQ(back.la, r.la);
    EXPECT_EQ(back.sequence, r.sequence);
    EXPECT_EQ(back.qp, r.qp);
    EXPECT_EQ(back.gf, r.gf);
    ASSERT_EQ(back.report.items.size(), r.report.items.size());
    EXPECT_EQ(to_json(back), j);
    EXPECT_THROW(stretch_result_from_json(nlohmann::json::object()), ParseError);
}

// Every fitted instance: expansion reproduces the data, the degree bound
// holds, and odd triples have the w^2 structure.
TEST(StretchProperty, RoundTripAndStructure) {
    std::mt19937 rng(11);
    int even = 0, odd = 0;
    while (even + odd < 60) {
        auto a = random_partition(rng, 2, 3), b = random_partition(rng, 2, 3), c = random_partition(rng, 2, 3);
        auto r = analyse_stretch(a, b, c);
        ASSERT_FALSE(r.report.any_violated()) << a << b << c;
        auto exp = expand_gf(r.gf, static_cast<int>(r.sequence.size()) - 1);
        for (std::size_t t = 1; t < r.sequence.size(); ++t) ASSERT_EQ(exp[t], r.sequence[t]) << a << b << c << t;
        ASSERT_LE(r.qp.degree(), default_degree_bound(a, b, c));
        if (triple_parity(a, b, c) == Parity::Odd) {
            ++odd;
            ASSERT_TRUE(r.qp.p_odd.is_zero());
            ASSERT_EQ(r.gf.d1, 0);
            for (int k = 1; k <= r.gf.numerator.degree(); k += 2) ASSERT_EQ(r.gf.numerator.coeff(k), 0);
        } else {
            ++even;
        }
    }
    EXPECT_GT(odd, 5);
}
