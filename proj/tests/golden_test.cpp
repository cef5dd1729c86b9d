#include <gtest/gtest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>

#include "nlhive/errors.hpp"
#include "nlhive/golden.hpp"

using namespace nlhive;
using nlohmann::json;

namespace {

json corpus(json entries) { return json{{"name", "t"}, {"entries", std::move(entries)}}; }

json eq9() {
    return {{"id", "eq9"},       {"mu", "5,3"},
            {"nu", "4,1"},       {"la", "5,2"},
            {"gf", "(3w^2+3w+1)/((1-w)^3(1-w^2))"},
            {"p_even", "(t+2)(14t^2+23t+12)/24"},
            {"p_odd", "(t+1)(14t^2+37t+21)/24"}};
}

const GoldenCheck* find(const GoldenReport& r, const std::string& what) {
    for (const auto& c : r.checks)
        if (c.what == what) return &c;
    return nullptr;
}

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("nlhive_golden_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST(Golden, SubstituteParams) {
    EXPECT_EQ(substitute_params("(bt+2)(2b^2t^2+1)", json{{"b", 3}}), "((3)t+2)(2(3)^2t^2+1)");
    EXPECT_EQ(substitute_params("(bt+2)", json::object()), "(bt+2)");
    // t and w are never parameters
    EXPECT_EQ(substitute_params("t+w", json{{"t", 1}, {"w", 2}}), "t+w");
    EXPECT_EQ(substitute_params("a,b", json{{"a", 6}, {"b", 2}}, false), "6,2");
}

TEST(Golden, FitEntryPasses) {
    auto r = run_golden(corpus({eq9()}));
    EXPECT_TRUE(r.passed());
    for (const char* what : {"gf@t", "p_even@t", "p_odd@t", "gf", "p_even", "p_odd"})
        ASSERT_NE(find(r, what), nullptr) << what;
    EXPECT_TRUE(r.warnings.empty());
}

TEST(Golden, WrongFormulaIsADiffNotAnException) {
    auto e = eq9();
    e["p_odd"] = "(t+1)(14t^2+37t+20)/24";
    auto r = run_golden(corpus({e}));
    EXPECT_FALSE(r.passed());
    EXPECT_EQ(r.failures(), 2u);  // both the values and the fitted polynomial differ
    EXPECT_FALSE(find(r, "p_odd")->pass);
    EXPECT_NE(find(r, "p_odd@t")->detail.find("t=1"), std::string::npos);
    EXPECT_TRUE(find(r, "p_even")->pass);
}

TEST(Golden, GfComparedAsFunctions) {
    // same function, not in lowest terms
    auto e = eq9();
    e["gf"] = "(3w^2+3w+1)(1+w)/((1-w)^3(1-w^2)(1+w))";
    EXPECT_TRUE(run_golden(corpus({e})).passed());
}

TEST(Golden, ParamsAndEvaluation) {
    json e{{"id", "cube"}, {"mu", "a,b"}, {"nu", "a,b"}, {"la", "a,b"}, {"params", {{"a", 9}, {"b", 3}}},
           {"check", "evaluate"}, {"t_min", 1}, {"t_max", 6},
           {"p_even", "(bt+2)(2b^2t^2+5bt+4)/8"}, {"p_odd", "(bt+1)(2b^2t^2+7bt+7)/8"}};
    auto r = run_golden(corpus({e}));
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.checks.size(), 2u);
}

TEST(Golden, ErrataBecomeWarnings) {
    auto e = eq9();
    e["errata"] = "printed with a typo";
    e["quote"] = {{"p_even", "whatever was printed"}};
    auto r = run_golden(corpus({e}));
    EXPECT_TRUE(r.passed());
    ASSERT_EQ(r.warnings.size(), 1u);
    EXPECT_NE(r.warnings[0].find("eq9"), std::string::npos);
}

TEST(Golden, OnlyFilter) {
    auto other = eq9();
    other["id"] = "other";
    other["p_even"] = "0";
    GoldenOptions opts;
    opts.only = {"eq9"};
    std::vector<std::string> seen;
    opts.progress = [&](const std::string& id) { seen.push_back(id); };
    auto r = run_golden(corpus({eq9(), other}), opts);
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(seen, std::vector<std::string>{"eq9"});
}

TEST(Golden, StabilityEntry) {
    json e{{"id", "s"},   {"kind", "stability"}, {"mode", "head"}, {"mu", "1"}, {"nu", "1"}, {"la", "1,1"},
           {"a_min", 0},  {"a_max", 3},
           {"rows", {{{"a", 0}, {"gf", "1/(1-w)"}}, {{"a", 1}, {"gf", "1/(1-w^2)"}}}}};
    auto r = run_golden(corpus({e}));
    EXPECT_TRUE(r.passed()) << to_json(r).dump();
    EXPECT_NE(find(r, "a=0 gf"), nullptr);
}

TEST(Golden, WeylEntry) {
    json e{{"id", "c3"}, {"kind", "weyl"}, {"family", "C"}, {"rank", 3}, {"mu", "2,1,1"}, {"nu", "2,1,1"},
           {"la", "2,1,1"}, {"t_max", 2}, {"p_even", "(t+2)(t^2+4t+8)/16"}, {"p_odd", "(t+1)(t^2+2t+5)/16"}};
    EXPECT_TRUE(run_golden(corpus({e})).passed());
    e["family"] = "B";
    EXPECT_FALSE(run_golden(corpus({e})).passed());
}

TEST(Golden, MalformedCorporaAreParseErrors) {
    EXPECT_THROW(run_golden(json::array()), ParseError);
    EXPECT_THROW(run_golden(json{{"entries", 3}}), ParseError);
    EXPECT_THROW(run_golden(corpus({json{{"mu", "1"}}})), ParseError);  // no id
    auto e = eq9();
    e["kind"] = "nonsense";
    EXPECT_THROW(run_golden(corpus({e})), ParseError);
    e = eq9();
    e["check"] = "guess";
    EXPECT_THROW(run_golden(corpus({e})), ParseError);
    e = eq9();
    e.erase("gf");
    e.erase("p_even");
    e.erase("p_odd");
    EXPECT_THROW(run_golden(corpus({e})), ParseError);  // no claim
    e = eq9();
    e["gf"] = "1/(1-";
    EXPECT_THROW(run_golden(corpus({e})), ParseError);
}

TEST(Golden, EmptyCorpusPassesWithWarning) {
    auto r = run_golden(corpus(json::array()));
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.warnings.size(), 1u);

    auto p = scratch("empty.json");
    std::ofstream(p).close();
    auto f = run_golden_file(p);
    EXPECT_TRUE(f.passed());
    EXPECT_TRUE(f.checks.empty());
    EXPECT_EQ(f.warnings.size(), 1u);

    EXPECT_THROW(run_golden_file(scratch("missing.json")), ParseError);
    std::ofstream(scratch("bad.json")) << "{ not json";
    EXPECT_THROW(run_golden_file(scratch("bad.json")), ParseError);
}

TEST(Golden, ReportJson) {
    auto e = eq9();
    e["p_even"] = "1";
    auto j = to_json(run_golden(corpus({e})));
    EXPECT_EQ(j.at("passed"), false);
    EXPECT_EQ(j.at("failures"), 2);
    EXPECT_EQ(j.at("corpus"), "t");
    EXPECT_TRUE(j.at("checks").is_array());
}
