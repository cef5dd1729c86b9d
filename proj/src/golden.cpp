#include "nlhive/golden.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

#include "nlhive/errors.hpp"
#include "nlhive/khive_nl.hpp"
#include "nlhive/weylchar.hpp"

namespace nlhive {

using nlohmann::json;

bool GoldenReport::passed() const { return failures() == 0; }

std::size_t GoldenReport::failures() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += !c.pass;
    return n;
}

std::string substitute_params(std::string_view formula, const json& params, bool parenthesize) {
    std::string out;
    for (char c : formula) {
        std::string key(1, c);
        if (std::isalpha(static_cast<unsigned char>(c)) && c != 't' && c != 'w' && params.is_object() &&
            params.contains(key)) {
            auto v = std::to_string(params.at(key).get<long>());
            out += parenthesize ? "(" + v + ")" : v;
        } else {
            out += c;
        }
    }
    return out;
}

namespace {

// What a table row claims about one stretched family.
struct Claim {
    std::optional<RationalFunction> gf;
    std::optional<QPoly> p_even, p_odd;

    bool empty() const { return !gf && !p_even && !p_odd; }
};

std::string str_field(const json& e, const char* key) {
    if (!e.contains(key)) throw ParseError(std::string("golden entry lacks \"") + key + "\"");
    if (!e.at(key).is_string()) throw ParseError(std::string("golden field \"") + key + "\" must be a string");
    return e.at(key).get<std::string>();
}

int int_field(const json& e, const char* key, std::optional<int> fallback = {}) {
    if (!e.contains(key)) {
        if (fallback) return *fallback;
        throw ParseError(std::string("golden entry lacks \"") + key + "\"");
    }
    if (!e.at(key).is_number_integer()) throw ParseError(std::string("golden field \"") + key + "\" must be an integer");
    return e.at(key).get<int>();
}

Claim parse_claim(const json& row, const json& params) {
    Claim c;
    if (row.contains("gf")) c.gf = parse_rational_function(substitute_params(str_field(row, "gf"), params), 'w');
    if (row.contains("p_all")) {
        c.p_even = c.p_odd = parse_polynomial(substitute_params(str_field(row, "p_all"), params), 't');
    }
    if (row.contains("p_even")) c.p_even = parse_polynomial(substitute_params(str_field(row, "p_even"), params), 't');
    if (row.contains("p_odd")) c.p_odd = parse_polynomial(substitute_params(str_field(row, "p_odd"), params), 't');
    return c;
}

std::string show(const mpq_class& q) { return q.get_str(); }

class Runner {
public:
    Runner(const GoldenOptions& opts, GoldenReport& rep) : opts_(opts), rep_(rep) {}

    void entry(const json& e) {
        if (!e.is_object()) throw ParseError("golden entries must be objects");
        id_ = str_field(e, "id");
        if (!opts_.only.empty() && std::find(opts_.only.begin(), opts_.only.end(), id_) == opts_.only.end()) return;
        if (opts_.progress) opts_.progress(id_);
        if (e.contains("errata")) rep_.warnings.push_back(id_ + ": " + str_field(e, "errata"));
        std::string kind = e.value("kind", "triple");
        if (kind == "triple") {
            triple(e);
        } else if (kind == "stability") {
            stability(e);
        } else if (kind == "weyl") {
            weyl(e);
        } else {
            throw ParseError("unknown golden entry kind \"" + kind + "\"");
        }
    }

private:
    void record(const std::string& what, bool pass, std::string detail = {}) {
        rep_.checks.push_back({id_, what, pass, std::move(detail)});
    }

    // Compares a claim against values at t = t_min..t_max (values[t]).
    void compare_values(const std::string& prefix, const Claim& c, const std::vector<mpq_class>& values, int t_min) {
        const int t_max = static_cast<int>(values.size()) - 1;
        if (c.gf) {
            auto s = power_series(*c.gf, t_max);
            std::string bad;
            for (int t = t_min; t <= t_max && bad.empty(); ++t)
                if (s[t] != values[t]) bad = "t=" + std::to_string(t) + ": table " + show(s[t]) + ", computed " + show(values[t]);
            record(prefix + "gf@t", bad.empty(), bad);
        }
        for (auto [poly, par, name] : {std::tuple{&c.p_even, 0, "p_even@t"}, std::tuple{&c.p_odd, 1, "p_odd@t"}}) {
            if (!*poly) continue;
            std::string bad;
            for (int t = t_min; t <= t_max && bad.empty(); ++t) {
                if (t % 2 != par) continue;
                auto v = (**poly)(mpq_class(t));
                if (v != values[t]) bad = "t=" + std::to_string(t) + ": table " + show(v) + ", computed " + show(values[t]);
            }
            record(prefix + name, bad.empty(), bad);
        }
    }

    void compare_fit(const std::string& prefix, const Claim& c, const QuasiPolynomial2& qp, const RationalGF& gf) {
        if (c.gf) record(prefix + "gf", gf_equivalent(gf, *c.gf), "fitted " + render(gf));
        if (c.p_even) record(prefix + "p_even", qp.p_even == *c.p_even, "fitted " + render(qp.p_even, 't'));
        if (c.p_odd) record(prefix + "p_odd", qp.p_odd == *c.p_odd, "fitted " + render(qp.p_odd, 't'));
    }

    static std::vector<mpq_class> as_rational(const std::vector<std::uint64_t>& seq) {
        std::vector<mpq_class> v;
        for (auto x : seq) v.emplace_back(mpz_class(std::to_string(x)));
        return v;
    }

    bool fit_mode(const json& e) const {
        std::string check = e.value("check", "fit");
        if (check != "fit" && check != "evaluate") throw ParseError("golden \"check\" must be fit or evaluate");
        return check == "fit";
    }

    void triple(const json& e) {
        const json params = e.value("params", json::object());
        auto mu = parse_partition(substitute_params(str_field(e, "mu"), params, false));
        auto nu = parse_partition(substitute_params(str_field(e, "nu"), params, false));
        auto la = parse_partition(substitute_params(str_field(e, "la"), params, false));
        Claim c = parse_claim(e, params);
        if (c.empty()) throw ParseError("golden entry " + id_ + " makes no claim");
        const bool fit = fit_mode(e);
        const int bound = int_field(e, "degree_bound", default_degree_bound(mu, nu, la));
        const int t_max = fit ? std::max(int_field(e, "t_max", 0), required_samples(bound) - 1) : int_field(e, "t_max");
        const int t_min = int_field(e, "t_min", 0);
        auto seq = stretched_sequence(mu, nu, la, t_max, opts_.seq);
        compare_values("", c, as_rational(seq), t_min);
        if (!fit) return;
        try {
            auto qp = fit_quasi_polynomial(seq, bound);
            compare_fit("", c, qp, to_generating_function(qp));
        } catch (const FitError& err) {
            record("fit", false, err.what());
        }
    }

    void stability(const json& e) {
        StabilityConfig cfg;
        std::string mode = e.value("mode", "head");
        if (mode == "head") {
            cfg.mode = StabilityConfig::Mode::HeadIncrement;
        } else if (mode == "prepend") {
            cfg.mode = StabilityConfig::Mode::Prepend;
        } else {
            throw ParseError("stability mode must be head or prepend");
        }
        cfg.mu = parse_partition(str_field(e, "mu"));
        cfg.nu = parse_partition(str_field(e, "nu"));
        cfg.la = parse_partition(str_field(e, "la"));
        cfg.a_min = int_field(e, "a_min");
        cfg.a_max = int_field(e, "a_max");
        cfg.seq = opts_.seq;
        if (!e.contains("rows") || !e.at("rows").is_array()) throw ParseError("stability entry needs a rows array");
        for (const auto& row : e.at("rows"))
            if (row.contains("errata")) rep_.warnings.push_back(id_ + ": " + str_field(row, "errata"));

        auto claim_for = [&](int a) -> std::optional<Claim> {
            for (const auto& row : e.at("rows")) {
                if (row.contains("a") && row.at("a").get<int>() == a) return parse_claim(row, json::object());
                if (row.contains("a_from") && a >= row.at("a_from").get<int>()) {
                    std::string par = row.value("a_parity", "any");
                    if (par == "any" || (par == "even") == (a % 2 == 0)) return parse_claim(row, json::object());
                }
            }
            return std::nullopt;
        };

        if (!fit_mode(e)) {
            const int t_max = int_field(e, "t_max");
            for (int a = cfg.a_min; a <= cfg.a_max; ++a) {
                auto claim = claim_for(a);
                if (!claim) continue;
                auto [mu, nu, la] = stability_triple(cfg, a);
                auto seq = stretched_sequence(mu, nu, la, t_max, opts_.seq);
                compare_values("a=" + std::to_string(a) + " ", *claim, as_rational(seq), 0);
            }
            return;
        }
        cfg.t_max = e.contains("t_max") ? int_field(e, "t_max") : -1;
        StabilityTable table;
        try {
            table = stability_scan(cfg);
        } catch (const FitError& err) {
            record("fit", false, err.what());
            return;
        }
        for (const auto& row : table.rows) {
            auto claim = claim_for(row.a);
            if (!claim) continue;
            std::string prefix = "a=" + std::to_string(row.a) + " ";
            compare_values(prefix, *claim, as_rational(row.sequence), 0);
            compare_fit(prefix, *claim, row.qp, row.gf);
        }
        if (e.contains("onset")) {
            const auto& on = e.at("onset");
            auto expect = [&](const char* key) -> std::optional<int> {
                if (!on.contains(key) || on.at(key).is_null()) return std::nullopt;
                return on.at(key).get<int>();
            };
            auto fmt = [](std::optional<int> v) { return v ? std::to_string(*v) : std::string("none"); };
            auto ee = expect("even"), eo = expect("odd");
            record("onset_even", ee == table.onset_even, "expected " + fmt(ee) + ", found " + fmt(table.onset_even));
            record("onset_odd", eo == table.onset_odd, "expected " + fmt(eo) + ", found " + fmt(table.onset_odd));
        }
    }

    void weyl(const json& e) {
        Family f = parse_family(str_field(e, "family"));
        int r = int_field(e, "rank");
        auto mu = parse_partition(str_field(e, "mu"));
        auto nu = parse_partition(str_field(e, "nu"));
        auto la = parse_partition(str_field(e, "la"));
        Claim c = parse_claim(e, json::object());
        const int t_min = int_field(e, "t_min", 1);
        const int t_max = int_field(e, "t_max");
        std::vector<mpq_class> values(static_cast<std::size_t>(t_max) + 1);
        std::string nl_bad;
        for (int t = t_min; t <= t_max; ++t) {
            auto a = mu.stretch(t), b = nu.stretch(t), l = la.stretch(t);
            auto m = tensor_multiplicity(f, r, a, b, l);
            values[t] = mpz_class(std::to_string(m));
            if (e.value("equals_nl", false) && nl_bad.empty()) {
                auto nl = count_nl_hive(a, b, l, opts_.seq.limits);
                if (nl != m)
                    nl_bad = "t=" + std::to_string(t) + ": multiplicity " + std::to_string(m) + ", NL " + std::to_string(nl);
            }
        }
        compare_values("", c, values, t_min);
        if (e.value("equals_nl", false)) record("equals_nl", nl_bad.empty(), nl_bad);
    }

    const GoldenOptions& opts_;
    GoldenReport& rep_;
    std::string id_;
};

}  // namespace

GoldenReport run_golden(const json& corpus, const GoldenOptions& opts) {
    GoldenReport rep;
    if (!corpus.is_object()) throw ParseError("golden corpus must be a JSON object");
    rep.corpus = corpus.value("name", "");
    const json entries = corpus.value("entries", json::array());
    if (!entries.is_array()) throw ParseError("golden \"entries\" must be an array");
    if (entries.empty()) rep.warnings.push_back("corpus has no entries; passing vacuously");
    Runner run(opts, rep);
    try {
        for (const auto& e : entries) run.entry(e);
    } catch (const json::exception& err) {
        throw ParseError(std::string("malformed golden entry: ") + err.what());
    }
    return rep;
}

GoldenReport run_golden_file(const std::filesystem::path& path, const GoldenOptions& opts) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open golden corpus " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
        GoldenReport rep;
        rep.corpus = path.filename().string();
        rep.warnings.push_back("corpus file is empty; passing vacuously");
        return rep;
    }
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& err) {
        throw ParseError(path.string() + ": " + err.what());
    }
    auto rep = run_golden(j, opts);
    if (rep.corpus.empty()) rep.corpus = path.filename().string();
    return rep;
}

json to_json(const GoldenReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"entry", c.entry}, {"what", c.what}, {"pass", c.pass}, {"detail", c.detail}});
    return {{"corpus", r.corpus}, {"passed", r.passed()}, {"failures", r.failures()}, {"checks", checks},
            {"warnings", r.warnings}};
}

}  // namespace nlhive
