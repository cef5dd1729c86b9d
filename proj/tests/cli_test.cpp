#include <gtest/gtest.h>

#include <stdlib.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "nlhive/cli.hpp"
#include "nlhive/stretch.hpp"

using namespace nlhive;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("nlhive_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    return dir / name;
}

// Sets an environment variable for the lifetime of the guard.
struct EnvGuard {
    std::string name;
    EnvGuard(std::string n, const std::string& v) : name(std::move(n)) { ::setenv(name.c_str(), v.c_str(), 1); }
    ~EnvGuard() { ::unsetenv(name.c_str()); }
};

}  // namespace

TEST(Cli, Lr) {
    auto r = run({"lr", "6,5,3", "6,4,1", "9,7,5,4"});
    EXPECT_EQ(r.code, cli::kExitOk);
    EXPECT_EQ(first_line(r.out), "7");
    EXPECT_NE(r.out.find("oracle agrees"), std::string::npos);
    EXPECT_EQ(first_line(run({"lr", "1", "1", "2"}).out), "1");
    EXPECT_EQ(first_line(run({"lr", "1", "1", "3"}).out), "0");
}

TEST(Cli, Nl) {
    EXPECT_EQ(first_line(run({"nl", "5,3", "4,1", "5,2"}).out), "6");
    EXPECT_EQ(first_line(run({"nl", "5,3", "4,1", "4,2"}).out), "0");
    EXPECT_EQ(first_line(run({"nl", "", "", ""}).out), "1");
    for (const char* m : {"hive", "lrsum", "ct"}) {
        auto r = run({"--method", m, "nl", "5,3", "4,1", "5,2"});
        EXPECT_EQ(first_line(r.out), "6") << m;
        EXPECT_NE(r.out.find(std::string("method: ") + m), std::string::npos);
    }
    auto v = run({"--method", "ct", "nl", "5,3", "4,1", "5,2", "-v"});
    EXPECT_NE(v.err.find("x-side"), std::string::npos);
    EXPECT_EQ(first_line(v.out), "6");
}

TEST(Cli, Stretch) {
    auto r = run({"stretch", "3,1", "3,1", "3,1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("N(w) = (w^2+w+1)/((1-w)^3(1-w^2))"), std::string::npos);
    EXPECT_NE(run({"stretch", "1,1", "1,1", "1,1"}).out.find("N(w) = 1/((1-w)(1-w^2))"), std::string::npos);
    // nothing beyond t = 0
    EXPECT_NE(run({"stretch", "2", "", "3"}).out.find("N(w) = 0"), std::string::npos);
}

TEST(Cli, GfExpandAndFit) {
    auto r = run({"--tmax", "6", "gf", "(7w^4+11w^2+1)/(1-w^2)^4"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(first_line(r.out), "1 0 15 0 61 0 158");
    auto f = run({"--format", "json", "gf", "5,3", "4,1", "5,2"});
    EXPECT_EQ(json::parse(f.out).at("gf").at("text"), "(3w^2+3w+1)/((1-w)^3(1-w^2))");
}

TEST(Cli, StretchJsonRoundTrips) {
    auto r = run({"--format", "json", "stretch", "5,3", "4,1", "5,2"});
    ASSERT_EQ(r.code, 0);
    auto j = json::parse(r.out);
    EXPECT_EQ(j.at("command"), "stretch");
    auto back = stretch_result_from_json(j);
    EXPECT_EQ(back.sequence[1], 6u);
    auto again = to_json(back);
    for (const auto& [k, v] : again.items()) EXPECT_EQ(j.at(k), v) << k;
}

TEST(Cli, CsvOutput) {
    auto r = run({"--format", "csv", "stretch", "1,1", "1,1", "1,1"});
    EXPECT_EQ(r.out.substr(0, 28), "t,value\n0,1\n1,1\n2,2\n3,2\n4,3\n");
    // too few samples for the degree bound
    EXPECT_EQ(run({"--tmax", "3", "stretch", "1,1", "1,1", "1,1"}).code, cli::kExitUsage);
}

TEST(Cli, Conjectures) {
    auto r = run({"--format", "json", "conjectures", "1,1", "1,1", "1,1"});
    ASSERT_EQ(r.code, 0);
    auto j = json::parse(r.out);
    bool found = false;
    for (const auto& it : j.at("items"))
        if (it.at("id") == "E(ii)") {
            found = true;
            EXPECT_EQ(it.at("verdict"), "n/a");
        }
    EXPECT_TRUE(found) << r.out;
}

TEST(Cli, Stability) {
    auto r = run({"stability", "1", "1", "1,1", "--a-max", "4"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("a=0"), std::string::npos);
    EXPECT_NE(r.out.find("onset (even a):"), std::string::npos);
}

TEST(Cli, Weyl) {
    auto r = run({"--format", "json", "weyl", "1", "1", "2", "--rmax", "3"});
    EXPECT_EQ(r.code, 0);
    auto j = json::parse(r.out);
    EXPECT_EQ(j.at("stable_rank"), 2);
    EXPECT_TRUE(j.at("stable_rows_agree").get<bool>());
    auto c = run({"--tmax", "1", "weyl", "2,1,1", "2,1,1", "2,1,1", "--family", "C", "--rank", "3"});
    EXPECT_NE(c.out.find("C 3 1 1 4"), std::string::npos) << c.out;  // below the stable rank: reported only
    EXPECT_EQ(c.code, 0);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, cli::kExitUsage);
    EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"lr", "1", "1"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"lr", "1,2", "1", "3"}).code, cli::kExitUsage);  // not a partition
    EXPECT_EQ(run({"--format", "xml", "lr", "1", "1", "2"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"--budget-nodes", "0", "nl", "1", "1", "2"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"gf", "1", "2"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
}

TEST(Cli, BudgetExit) {
    auto r = run({"--budget-nodes", "10", "nl", "8,6,3", "7,5,2", "9,6,4"});
    EXPECT_EQ(r.code, cli::kExitBudget);
    EXPECT_NE(r.err.find("budget exceeded"), std::string::npos);
    EXPECT_TRUE(r.out.empty());  // never a wrong number
    auto s = run({"--budget-nodes", "2000", "--tmax", "6", "stretch", "3,2,1", "3,2,1", "3,2,1"});
    EXPECT_EQ(s.code, cli::kExitBudget);
    EXPECT_NE(s.err.find("computed prefix: 1"), std::string::npos) << s.err;
}

TEST(Cli, EnvironmentOverrides) {
    {
        EnvGuard g("NLHIVE_BUDGET_NODES", "10");
        EXPECT_EQ(run({"nl", "8,6,3", "7,5,2", "9,6,4"}).code, cli::kExitBudget);
        // the command line wins
        EXPECT_EQ(run({"--budget-nodes", "1000000", "nl", "8,6,3", "7,5,2", "9,6,4"}).code, cli::kExitOk);
    }
    {
        EnvGuard g("NLHIVE_FORMAT", "json");
        EXPECT_EQ(json::parse(run({"nl", "5,3", "4,1", "5,2"}).out).at("value"), 6);
    }
    {
        EnvGuard g("NLHIVE_METHOD", "ct");
        EXPECT_NE(run({"nl", "5,3", "4,1", "5,2"}).out.find("method: ct"), std::string::npos);
    }
}

TEST(Cli, Golden) {
    auto good = scratch("good.json");
    std::ofstream(good) << R"J({"name": "g", "entries": [
        {"id": "eq9", "mu": "5,3", "nu": "4,1", "la": "5,2",
         "gf": "(3w^2+3w+1)/((1-w)^3(1-w^2))"}]})J";
    auto r = run({"golden", good.string()});
    EXPECT_EQ(r.code, cli::kExitOk);
    EXPECT_EQ(first_line(r.out).substr(0, 4), "PASS");

    auto bad = scratch("bad.json");
    std::ofstream(bad) << R"J({"entries": [
        {"id": "eq9", "mu": "5,3", "nu": "4,1", "la": "5,2", "gf": "1/(1-w)^4"}]})J";
    auto d = run({"golden", bad.string()});
    EXPECT_EQ(d.code, cli::kExitGoldenDiff);
    EXPECT_NE(d.out.find("DIFF eq9 gf"), std::string::npos) << d.out;
    auto j = run({"--format", "json", "golden", good.string(), bad.string()});
    EXPECT_EQ(j.code, cli::kExitGoldenDiff);
    EXPECT_FALSE(json::parse(j.out).at("passed").get<bool>());

    auto empty = scratch("empty.json");
    std::ofstream(empty).close();
    auto e = run({"golden", empty.string()});
    EXPECT_EQ(e.code, cli::kExitOk);
    EXPECT_NE(e.err.find("warning"), std::string::npos);

    EXPECT_EQ(run({"golden", scratch("missing.json").string()}).code, cli::kExitUsage);
}
