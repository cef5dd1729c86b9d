#include "nlhive/cli.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "nlhive/ctgf_oracle.hpp"
#include "nlhive/errors.hpp"
#include "nlhive/golden.hpp"
#include "nlhive/hive_lr.hpp"
#include "nlhive/khive_nl.hpp"
#include "nlhive/stretch.hpp"
#include "nlhive/weylchar.hpp"

namespace nlhive::cli {

using nlohmann::json;

namespace {

std::string to_string(Method m) {
    switch (m) {
        case Method::Hive: return "hive";
        case Method::LrSum: return "lrsum";
        case Method::Ct: return "ct";
    }
    return "?";
}

EnumerationLimits limits_of(const RunConfig& cfg) {
    EnumerationLimits l;
    l.node_budget = cfg.budget_nodes;
    l.time_budget = std::chrono::milliseconds(static_cast<long long>(cfg.budget_secs * 1000.0));
    return l;
}

SequenceOptions sequence_options(const RunConfig& cfg) {
    SequenceOptions o;
    o.limits = limits_of(cfg);
    if (cfg.cache_dir) o.cache_dir = *cfg.cache_dir;
    o.threads = cfg.threads;
    return o;
}

json parts(const Partition& p) { return p.parts(); }

std::string paren(const Partition& p) { return "(" + render(p) + ")"; }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

void csv_row(std::ostream& out, std::initializer_list<std::string> fields) {
    bool first = true;
    for (const auto& f : fields) {
        if (!first) out << ',';
        out << csv_field(f);
        first = false;
    }
    out << '\n';
}

struct Triple {
    std::string mu, nu, la;
    Partition a, b, c;

    void parse() {
        a = parse_partition(mu);
        b = parse_partition(nu);
        c = parse_partition(la);
    }
};

void add_triple(CLI::App* sub, Triple& t) {
    sub->add_option("mu", t.mu, "first partition, e.g. 5,3 (\"\" for the empty one)")->required();
    sub->add_option("nu", t.nu, "second partition")->required();
    sub->add_option("la", t.la, "third partition")->required();
}

std::vector<std::uint64_t> sequence_by_method(const Triple& t, int t_max, const RunConfig& cfg) {
    switch (cfg.method) {
        case Method::Hive: return stretched_sequence(t.a, t.b, t.c, t_max, sequence_options(cfg));
        case Method::LrSum: {
            std::vector<std::uint64_t> seq;
            for (int k = 0; k <= t_max; ++k)
                seq.push_back(count_nl_lrsum(t.a.stretch(k), t.b.stretch(k), t.c.stretch(k), limits_of(cfg)));
            return seq;
        }
        case Method::Ct: return nl_gf_truncated(t.a, t.b, t.c, t_max);
    }
    return {};
}

StretchResult stretch_of(const Triple& t, const RunConfig& cfg, int degree_bound) {
    int bound = degree_bound < 0 ? default_degree_bound(t.a, t.b, t.c) : degree_bound;
    int t_max = cfg.t_max < 0 ? required_samples(bound) - 1 : cfg.t_max;
    return analyse_sequence(t.a, t.b, t.c, sequence_by_method(t, t_max, cfg), bound);
}

std::optional<std::string> fit_failure(const StretchResult& r) {
    for (const auto& it : r.report.items)
        if ((it.id == "E(iii)" || it.id == "O(iii)") && it.verdict == Verdict::Violated) return it.note;
    return std::nullopt;
}

void print_stretch(std::ostream& out, const StretchResult& r, const RunConfig& cfg) {
    switch (cfg.format) {
        case Format::Json: {
            auto j = to_json(r);
            j["command"] = "stretch";
            j["method"] = to_string(cfg.method);
            out << j.dump(2) << '\n';
            return;
        }
        case Format::Csv:
            csv_row(out, {"t", "value"});
            for (std::size_t t = 0; t < r.sequence.size(); ++t)
                csv_row(out, {std::to_string(t), std::to_string(r.sequence[t])});
            return;
        case Format::Text: break;
    }
    out << "triple: " << paren(r.mu) << ' ' << paren(r.nu) << ' ' << paren(r.la) << '\n';
    out << "n(t), t = 0.." << r.sequence.size() - 1 << ':';
    for (auto v : r.sequence) out << ' ' << v;
    out << '\n' << "degree bound: " << r.degree_bound << '\n';
    if (auto f = fit_failure(r)) {
        out << "fit failed: " << *f << '\n';
        return;
    }
    out << "P_e(t) = " << render(r.qp.p_even, 't') << '\n';
    out << "P_o(t) = " << render(r.qp.p_odd, 't') << '\n';
    out << "N(w) = " << render(r.gf) << '\n';
}

void print_report(std::ostream& out, const StretchResult& r, const RunConfig& cfg) {
    switch (cfg.format) {
        case Format::Json: {
            auto j = to_json(r.report);
            j["command"] = "conjectures";
            j["triple"] = {parts(r.mu), parts(r.nu), parts(r.la)};
            out << j.dump(2) << '\n';
            return;
        }
        case Format::Csv:
            csv_row(out, {"id", "verdict", "witness_t", "note"});
            for (const auto& it : r.report.items)
                csv_row(out, {it.id, to_string(it.verdict), it.witness_t ? std::to_string(*it.witness_t) : "",
                              it.note});
            return;
        case Format::Text: break;
    }
    out << "triple: " << paren(r.mu) << ' ' << paren(r.nu) << ' ' << paren(r.la) << "  parity: "
        << (r.report.parity == Parity::Even ? "even" : "odd") << '\n';
    for (const auto& it : r.report.items) {
        out << it.id << std::string(8 - std::min<std::size_t>(7, it.id.size()), ' ') << to_string(it.verdict);
        if (it.witness_t) out << "  t=" << *it.witness_t;
        if (!it.note.empty()) out << "  " << it.note;
        out << '\n';
    }
}

// --- commands -----------------------------------------------------------------

int cmd_lr(Triple& t, bool oracle, const RunConfig& cfg, std::ostream& out) {
    t.parse();
    auto c = count_lr_auto(t.a, t.b, t.c, limits_of(cfg));
    std::string check = "skipped";
    if (oracle) {
        auto o = schur_coefficient_oracle(t.a, t.b, t.c);
        if (o != c)
            throw std::logic_error("hive count " + std::to_string(c) + " disagrees with Schur oracle " + std::to_string(o));
        check = "agrees";
    }
    switch (cfg.format) {
        case Format::Json:
            out << json{{"command", "lr"}, {"mu", parts(t.a)}, {"nu", parts(t.b)}, {"la", parts(t.c)},
                        {"value", c}, {"method", "hive"}, {"oracle", check}}
                       .dump(2)
                << '\n';
            break;
        case Format::Csv:
            csv_row(out, {"mu", "nu", "la", "value", "oracle"});
            csv_row(out, {render(t.a), render(t.b), render(t.c), std::to_string(c), check});
            break;
        case Format::Text: out << c << "\n# hive count; Schur oracle " << check << '\n'; break;
    }
    return kExitOk;
}

int cmd_nl(Triple& t, bool verbose, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    t.parse();
    std::uint64_t n = 0;
    switch (cfg.method) {
        case Method::Hive: n = count_nl_hive(t.a, t.b, t.c, limits_of(cfg)); break;
        case Method::LrSum: n = count_nl_lrsum(t.a, t.b, t.c, limits_of(cfg)); break;
        case Method::Ct: {
            CtOptions ct;
            if (verbose) ct.trace = &err;  // intermediate term counts
            n = nl_constant_term(t.a, t.b, t.c, ct);
            break;
        }
    }
    switch (cfg.format) {
        case Format::Json:
            out << json{{"command", "nl"}, {"mu", parts(t.a)}, {"nu", parts(t.b)}, {"la", parts(t.c)},
                        {"value", n}, {"method", to_string(cfg.method)}}
                       .dump(2)
                << '\n';
            break;
        case Format::Csv:
            csv_row(out, {"mu", "nu", "la", "method", "value"});
            csv_row(out, {render(t.a), render(t.b), render(t.c), to_string(cfg.method), std::to_string(n)});
            break;
        case Format::Text: out << n << "\n# method: " << to_string(cfg.method) << '\n'; break;
    }
    return kExitOk;
}

int cmd_gf(const std::vector<std::string>& args, const RunConfig& cfg, int degree_bound, std::ostream& out) {
    if (args.size() == 1) {
        // expand a formula
        auto f = parse_rational_function(args[0], 'w');
        int t_max = cfg.t_max < 0 ? 10 : cfg.t_max;
        auto s = power_series(f, t_max);
        switch (cfg.format) {
            case Format::Json: {
                json coeffs = json::array();
                for (const auto& q : s) coeffs.push_back(q.get_str());
                out << json{{"command", "gf"}, {"formula", args[0]}, {"coefficients", coeffs}}.dump(2) << '\n';
                break;
            }
            case Format::Csv:
                csv_row(out, {"t", "coefficient"});
                for (std::size_t k = 0; k < s.size(); ++k) csv_row(out, {std::to_string(k), s[k].get_str()});
                break;
            case Format::Text:
                for (std::size_t k = 0; k < s.size(); ++k) out << (k ? " " : "") << s[k].get_str();
                out << '\n';
                break;
        }
        return kExitOk;
    }
    if (args.size() != 3) throw CLI::ValidationError("gf", "expects one formula or three partitions");
    Triple t{args[0], args[1], args[2], {}, {}, {}};
    t.parse();
    auto r = stretch_of(t, cfg, degree_bound);
    auto failed = fit_failure(r);
    switch (cfg.format) {
        case Format::Json: {
            json j{{"command", "gf"}, {"triple", {parts(r.mu), parts(r.nu), parts(r.la)}}};
            if (failed) {
                j["error"] = *failed;
            } else {
                j["gf"] = to_json(r.gf);
            }
            out << j.dump(2) << '\n';
            break;
        }
        case Format::Csv:
            csv_row(out, {"mu", "nu", "la", "gf"});
            csv_row(out, {render(r.mu), render(r.nu), render(r.la), failed ? "" : render(r.gf)});
            break;
        case Format::Text: out << (failed ? "fit failed: " + *failed : render(r.gf)) << '\n'; break;
    }
    return kExitOk;
}

int cmd_stability(Triple& t, const std::string& mode, int a_min, int a_max, int degree_bound, const RunConfig& cfg,
                  std::ostream& out) {
    t.parse();
    StabilityConfig sc;
    sc.mode = mode == "prepend" ? StabilityConfig::Mode::Prepend : StabilityConfig::Mode::HeadIncrement;
    sc.mu = t.a;
    sc.nu = t.b;
    sc.la = t.c;
    sc.a_min = a_min;
    sc.a_max = a_max;
    sc.t_max = cfg.t_max;
    sc.degree_bound = degree_bound;
    sc.seq = sequence_options(cfg);
    auto table = stability_scan(sc);
    auto onset = [](std::optional<int> v) { return v ? std::to_string(*v) : std::string("none"); };
    switch (cfg.format) {
        case Format::Json: {
            json rows = json::array();
            for (const auto& r : table.rows)
                rows.push_back({{"a", r.a},
                                {"triple", {parts(r.mu), parts(r.nu), parts(r.la)}},
                                {"sequence", r.sequence},
                                {"quasi_polynomial", to_json(r.qp)},
                                {"gf", to_json(r.gf)}});
            json j{{"command", "stability"}, {"mode", mode}, {"rows", rows}};
            j["onset_even"] = table.onset_even ? json(*table.onset_even) : json(nullptr);
            j["onset_odd"] = table.onset_odd ? json(*table.onset_odd) : json(nullptr);
            out << j.dump(2) << '\n';
            break;
        }
        case Format::Csv:
            csv_row(out, {"a", "mu", "nu", "la", "gf", "p_even", "p_odd"});
            for (const auto& r : table.rows)
                csv_row(out, {std::to_string(r.a), render(r.mu), render(r.nu), render(r.la), render(r.gf),
                              render(r.qp.p_even, 't'), render(r.qp.p_odd, 't')});
            break;
        case Format::Text:
            for (const auto& r : table.rows)
                out << "a=" << r.a << "  " << paren(r.mu) << ' ' << paren(r.nu) << ' ' << paren(r.la) << "  "
                    << render(r.gf) << '\n';
            out << "onset (even a): " << onset(table.onset_even) << '\n';
            out << "onset (odd a): " << onset(table.onset_odd) << '\n';
            break;
    }
    return kExitOk;
}

int cmd_weyl(Triple& t, const std::string& family, int rank, int r_max, const RunConfig& cfg, std::ostream& out) {
    t.parse();
    const int t_max = cfg.t_max < 0 ? 2 : cfg.t_max;
    StabilizationReport rep;
    if (!family.empty()) {
        if (rank < 1) throw CLI::ValidationError("--rank", "required with --family");
        Family f = parse_family(family);
        rep.stable_rank = static_cast<int>(t.a.length() + t.b.length());
        for (int k = 1; k <= t_max; ++k) {
            auto a = t.a.stretch(k), b = t.b.stretch(k), c = t.c.stretch(k);
            auto m = tensor_multiplicity(f, rank, a, b, c);
            auto nl = count_nl_hive(a, b, c, limits_of(cfg));
            rep.rows.push_back({f, rank, k, m, nl});
            if (rank >= rep.stable_rank && m != nl) rep.stable_rows_agree = false;
        }
    } else {
        rep = verify_stabilization(t.a, t.b, t.c, t_max, r_max);
    }
    switch (cfg.format) {
        case Format::Json: {
            json rows = json::array();
            for (const auto& r : rep.rows)
                rows.push_back({{"family", nlhive::to_string(r.family)},
                                {"rank", r.rank},
                                {"t", r.t},
                                {"multiplicity", r.multiplicity},
                                {"nl", r.nl}});
            out << json{{"command", "weyl"},
                        {"stable_rank", rep.stable_rank},
                        {"stable_rows_agree", rep.stable_rows_agree},
                        {"rows", rows}}
                       .dump(2)
                << '\n';
            break;
        }
        case Format::Csv:
            csv_row(out, {"family", "rank", "t", "multiplicity", "nl"});
            for (const auto& r : rep.rows)
                csv_row(out, {nlhive::to_string(r.family), std::to_string(r.rank), std::to_string(r.t),
                              std::to_string(r.multiplicity), std::to_string(r.nl)});
            break;
        case Format::Text:
            out << "family rank t multiplicity nl\n";
            for (const auto& r : rep.rows)
                out << nlhive::to_string(r.family) << ' ' << r.rank << ' ' << r.t << ' ' << r.multiplicity << ' '
                    << r.nl << (r.rank >= rep.stable_rank ? "" : "  (below stable rank)") << '\n';
            out << "stable rank " << rep.stable_rank << ": " << (rep.stable_rows_agree ? "agrees" : "DISAGREES")
                << " with the NL count\n";
            break;
    }
    return rep.stable_rows_agree ? kExitOk : kExitGoldenDiff;
}

int cmd_golden(const std::vector<std::string>& paths, const std::vector<std::string>& only, bool verbose,
               const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    GoldenOptions opts;
    opts.seq = sequence_options(cfg);
    opts.only = only;
    if (verbose) opts.progress = [&err](const std::string& id) { err << "  " << id << std::endl; };
    bool all = true;
    json reports = json::array();
    for (const auto& p : paths) {
        if (verbose) err << p << '\n';
        auto rep = run_golden_file(p, opts);
        all = all && rep.passed();
        for (const auto& w : rep.warnings) err << "warning: " << p << ": " << w << '\n';
        switch (cfg.format) {
            case Format::Json: {
                auto j = to_json(rep);
                j["path"] = p;
                reports.push_back(j);
                break;
            }
            case Format::Csv:
                if (reports.empty()) csv_row(out, {"corpus", "entry", "check", "pass", "detail"});
                reports.push_back(nullptr);
                for (const auto& c : rep.checks) csv_row(out, {rep.corpus, c.entry, c.what, c.pass ? "1" : "0", c.detail});
                break;
            case Format::Text:
                out << (rep.passed() ? "PASS " : "FAIL ") << p << " (" << rep.checks.size() << " checks, "
                    << rep.failures() << " failed)\n";
                for (const auto& c : rep.checks)
                    if (!c.pass || verbose)
                        out << "  " << (c.pass ? "ok   " : "DIFF ") << c.entry << ' ' << c.what
                            << (c.detail.empty() ? "" : ": " + c.detail) << '\n';
                break;
        }
    }
    if (cfg.format == Format::Json) out << json{{"command", "golden"}, {"passed", all}, {"corpora", reports}}.dump(2) << '\n';
    return all ? kExitOk : kExitGoldenDiff;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Littlewood-Richardson and Newell-Littlewood coefficients via hives", "nlhive"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    std::string cache_dir;
    const std::map<std::string, Method> methods{{"hive", Method::Hive}, {"lrsum", Method::LrSum}, {"ct", Method::Ct}};
    const std::map<std::string, Format> formats{{"text", Format::Text}, {"json", Format::Json}, {"csv", Format::Csv}};
    app.add_option("--method", cfg.method, "counting method")
        ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case).description("{hive,lrsum,ct}"))
        ->envname("NLHIVE_METHOD");
    app.add_option("--format", cfg.format, "output format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case).description("{text,json,csv}"))
        ->envname("NLHIVE_FORMAT");
    app.add_option("--tmax", cfg.t_max, "largest dilation t")->check(CLI::NonNegativeNumber)->envname("NLHIVE_TMAX");
    app.add_option("--budget-nodes", cfg.budget_nodes, "enumeration nodes per triple")
        ->check(CLI::PositiveNumber)
        ->envname("NLHIVE_BUDGET_NODES");
    app.add_option("--budget-secs", cfg.budget_secs, "seconds per triple")
        ->check(CLI::PositiveNumber)
        ->envname("NLHIVE_BUDGET_SECS");
    app.add_option("--cache-dir", cache_dir, "on-disk cache of coefficients")->envname("NLHIVE_CACHE_DIR");
    app.add_option("--threads", cfg.threads, "dilations computed in parallel")
        ->check(CLI::Range(1u, 256u))
        ->envname("NLHIVE_THREADS");

    Triple tri;
    bool no_oracle = false;
    auto* lr = app.add_subcommand("lr", "Littlewood-Richardson coefficient c^la_{mu,nu}");
    add_triple(lr, tri);
    lr->add_flag("--no-oracle", no_oracle, "skip the Schur-function cross-check");

    auto* nl = app.add_subcommand("nl", "Newell-Littlewood coefficient n^la_{mu,nu}");
    add_triple(nl, tri);
    bool nl_verbose = false;
    nl->add_flag("-v,--verbose", nl_verbose, "with --method ct: intermediate term counts on stderr");

    int degree_bound = -1;
    auto* st = app.add_subcommand("stretch", "stretched sequence, quasi-polynomial and generating function");
    add_triple(st, tri);
    st->add_option("--degree-bound", degree_bound, "fit degree (default 3n(n-1)/2)")->check(CLI::NonNegativeNumber);

    std::vector<std::string> gf_args;
    auto* gf = app.add_subcommand("gf", "generating function of a triple, or expand a formula in w");
    gf->add_option("args", gf_args, "three partitions, or one rational function of w")->required();
    gf->add_option("--degree-bound", degree_bound, "fit degree (default 3n(n-1)/2)")->check(CLI::NonNegativeNumber);

    auto* cj = app.add_subcommand("conjectures", "positivity and saturation checks on one stretched family");
    add_triple(cj, tri);
    cj->add_option("--degree-bound", degree_bound, "fit degree (default 3n(n-1)/2)")->check(CLI::NonNegativeNumber);

    std::string mode = "head";
    int a_min = 0, a_max = 0;
    auto* sb = app.add_subcommand("stability", "generating functions while a grows");
    add_triple(sb, tri);
    sb->add_option("--mode", mode, "head: add a to each first part; prepend: use (a, mu) etc.")
        ->check(CLI::IsMember({"head", "prepend"}));
    sb->add_option("--a-min", a_min)->check(CLI::NonNegativeNumber);
    sb->add_option("--a-max", a_max)->check(CLI::NonNegativeNumber)->required();
    sb->add_option("--degree-bound", degree_bound, "fit degree (default 3n(n-1)/2)")->check(CLI::NonNegativeNumber);

    std::string family;
    int rank = 0, r_max = -1;
    auto* wy = app.add_subcommand("weyl", "B/C/D tensor multiplicities against the NL coefficient");
    add_triple(wy, tri);
    wy->add_option("--family", family, "A, B, C or D; omit to scan B, C, D over ranks");
    wy->add_option("--rank", rank)->check(CLI::Range(1, kMaxRank));
    wy->add_option("--rmax", r_max, "largest rank in the scan")->check(CLI::Range(1, kMaxRank));

    std::vector<std::string> corpora, only;
    bool verbose = false;
    auto* gd = app.add_subcommand("golden", "replay transcribed tables and report differences");
    gd->add_option("corpus", corpora, "JSON corpus files")->required();
    gd->add_option("--only", only, "entry ids to run");
    gd->add_flag("-v,--verbose", verbose, "list every check and report progress");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
        if (!cache_dir.empty()) cfg.cache_dir = cache_dir;
        if (*lr) return cmd_lr(tri, !no_oracle, cfg, out);
        if (*nl) return cmd_nl(tri, nl_verbose, cfg, out, err);
        if (*st) {
            tri.parse();
            print_stretch(out, stretch_of(tri, cfg, degree_bound), cfg);
            return kExitOk;
        }
        if (*gf) return cmd_gf(gf_args, cfg, degree_bound, out);
        if (*cj) {
            tri.parse();
            print_report(out, stretch_of(tri, cfg, degree_bound), cfg);
            return kExitOk;
        }
        if (*sb) return cmd_stability(tri, mode, a_min, a_max, degree_bound, cfg, out);
        if (*wy) return cmd_weyl(tri, family, rank, r_max, cfg, out);
        if (*gd) return cmd_golden(corpora, only, verbose, cfg, out, err);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const PartialSequence& e) {
        err << "budget exceeded: " << e.what() << "\ncomputed prefix:";
        for (auto v : e.computed()) err << ' ' << v;
        err << '\n';
        return kExitBudget;
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << " (" << e.nodes_visited() << " nodes)\n";
        return kExitBudget;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace nlhive::cli
