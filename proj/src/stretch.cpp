#include "nlhive/stretch.hpp"

#include <unistd.h>

#include <atomic>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "nlhive/khive_nl.hpp"

namespace nlhive {

// --- sequences ---------------------------------------------------------------

namespace {

// NL coefficients are symmetric in the three labels, so the cache key sorts them.
std::string cache_key(Partition a, Partition b, Partition c) {
    std::array<Partition, 3> t{std::move(a), std::move(b), std::move(c)};
    std::sort(t.begin(), t.end());
    std::string key;
    for (const auto& p : t) key += "_" + (p.empty() ? std::string("0") : render(p));
    return "nl" + key;
}

std::optional<std::uint64_t> cache_read(const std::filesystem::path& dir, const std::string& key) {
    std::ifstream in(dir / key);
    std::string k;
    std::uint64_t v;
    if (in >> k >> v && k == key) return v;
    return std::nullopt;
}

void cache_write(const std::filesystem::path& dir, const std::string& key, std::uint64_t value) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::ostringstream tmpname;
    tmpname << key << ".tmp." << ::getpid() << "." << std::hash<std::thread::id>{}(std::this_thread::get_id());
    auto tmp = dir / tmpname.str();
    {
        std::ofstream out(tmp);
        out << key << ' ' << value << '\n';
        if (!out) return;  // unwritable cache is not fatal
    }
    std::filesystem::rename(tmp, dir / key, ec);
    if (ec) std::filesystem::remove(tmp, ec);
}

}  // namespace

std::vector<std::uint64_t> stretched_sequence(const Partition& mu, const Partition& nu, const Partition& la,
                                              int t_max, const SequenceOptions& opts) {
    if (t_max < 0) throw ValidationError("t_max must be nonnegative");
    const auto len = static_cast<std::size_t>(t_max) + 1;
    std::vector<std::uint64_t> seq(len, 0);
    std::vector<char> done(len, 0);
    std::optional<BudgetExceeded> failure;
    std::int64_t failed_t = -1;
    std::exception_ptr other;
    std::mutex m;
    std::atomic<int> next{0};

    auto work = [&] {
        for (int t; (t = next.fetch_add(1)) <= t_max;) {
            {
                std::lock_guard lk(m);
                if (failure || other) return;
            }
            try {
                auto a = mu.stretch(t), b = nu.stretch(t), c = la.stretch(t);
                std::optional<std::uint64_t> v;
                std::string key;
                if (opts.cache_dir) {
                    key = cache_key(a, b, c);
                    v = cache_read(*opts.cache_dir, key);
                }
                if (!v) {
                    v = count_nl_hive(a, b, c, opts.limits);
                    if (opts.cache_dir) cache_write(*opts.cache_dir, key, *v);
                }
                std::lock_guard lk(m);
                seq[t] = *v;
                done[t] = 1;
            } catch (const BudgetExceeded& e) {
                std::lock_guard lk(m);
                if (!failure || t < failed_t) failure = e, failed_t = t;
            } catch (...) {
                std::lock_guard lk(m);
                if (!other) other = std::current_exception();
            }
        }
    };

    unsigned n = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(len)));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < n; ++i) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();

    if (other) std::rethrow_exception(other);
    if (failure) {
        std::vector<std::uint64_t> prefix;
        for (std::size_t t = 0; t < len && done[t]; ++t) prefix.push_back(seq[t]);
        throw PartialSequence("stretched sequence stopped at t=" + std::to_string(failed_t) + ": " + failure->what(),
                              failure->nodes_visited(), std::move(prefix));
    }
    return seq;
}

int default_degree_bound(const Partition& mu, const Partition& nu, const Partition& la) {
    int n = static_cast<int>(std::max({mu.length(), nu.length(), la.length()}));
    return 3 * n * (n - 1) / 2;
}

// --- fitting -------------------------------------------------------------------

namespace {

// Newton form through (xs[k], ys[k]), converted to ascending coefficients.
QPoly interpolate(const std::vector<mpq_class>& xs, std::vector<mpq_class> ys) {
    const std::size_t m = xs.size();
    for (std::size_t level = 1; level < m; ++level)
        for (std::size_t k = m - 1; k >= level; --k) ys[k] = (ys[k] - ys[k - 1]) / (xs[k] - xs[k - level]);
    QPoly p;
    for (std::size_t k = m; k-- > 0;) p = p * QPoly({mpq_class(-xs[k]), mpq_class(1)}) + QPoly({ys[k]});
    return p;
}

QPoly fit_parity(std::span<const std::uint64_t> seq, int parity, int degree_bound) {
    std::vector<mpq_class> xs, ys;
    QPoly p;
    for (std::size_t t = parity; t < seq.size(); t += 2) {
        mpq_class x(static_cast<unsigned long>(t)), y(static_cast<unsigned long>(seq[t]));
        if (static_cast<int>(xs.size()) < degree_bound + 1) {
            xs.push_back(x);
            ys.push_back(y);
            if (static_cast<int>(xs.size()) == degree_bound + 1) p = interpolate(xs, ys);
        } else if (p(x) != y) {
            throw FitError("not quasi-period-2 within degree bound " + std::to_string(degree_bound) +
                               ": sample t=" + std::to_string(t) + " is " + std::to_string(seq[t]) +
                               ", interpolant gives " + p(x).get_str(),
                           static_cast<std::int64_t>(t));
        }
    }
    return p;
}

}  // namespace

QuasiPolynomial2 fit_quasi_polynomial(std::span<const std::uint64_t> seq, int degree_bound) {
    if (degree_bound < 0) throw ValidationError("degree bound must be nonnegative");
    if (static_cast<int>(seq.size()) < required_samples(degree_bound))
        throw ValidationError("fit with degree bound " + std::to_string(degree_bound) + " needs " +
                              std::to_string(required_samples(degree_bound)) + " samples, got " +
                              std::to_string(seq.size()));
    if (std::all_of(seq.begin() + 1, seq.end(), [](auto v) { return v == 0; })) return {};
    return {fit_parity(seq, 0, degree_bound), fit_parity(seq, 1, degree_bound)};
}

// --- generating functions ----------------------------------------------------

ZPoly RationalGF::denominator() const {
    return ZPoly{1, -1}.pow(static_cast<unsigned>(d1)) * ZPoly{1, 0, -1}.pow(static_cast<unsigned>(d2));
}

RationalGF to_generating_function(const QuasiPolynomial2& qp) {
    if (qp.is_zero()) return {};
    const int D = 1 + qp.degree();
    // F(w) = H(w) / (1-w^2)^D with deg H < 2D
    std::vector<mpz_class> f(2 * D);
    for (int t = 0; t < 2 * D; ++t) {
        mpq_class v = qp(t);
        if (v.get_den() != 1) throw ValidationError("quasi-polynomial is not integer valued at t=" + std::to_string(t));
        f[t] = v.get_num();
    }
    ZPoly h = ZPoly(std::move(f)) * ZPoly{1, 0, -1}.pow(static_cast<unsigned>(D));
    h = ZPoly(std::vector<mpz_class>(h.coeffs().begin(), h.coeffs().begin() + std::min<int>(2 * D, h.degree() + 1)));

    int p = D, q = D;
    const ZPoly one_minus{1, -1}, one_plus{1, 1};
    while (p > 0 && h(1) == 0) {
        h = divmod(h, one_minus).first;
        --p;
    }
    while (q > 0 && h(-1) == 0) {
        h = divmod(h, one_plus).first;
        --q;
    }
    if (p >= q) return {h, p - q, q};
    return {h * one_minus.pow(static_cast<unsigned>(q - p)), 0, q};
}

std::vector<mpz_class> expand_gf(const RationalGF& gf, int t_max) {
    if (t_max < 0) return {};
    std::vector<mpz_class> s(static_cast<std::size_t>(t_max) + 1, 0);
    for (int k = 0; k <= std::min(t_max, gf.numerator.degree()); ++k) s[k] = gf.numerator.coeff(k);
    for (int r = 0; r < gf.d1; ++r)
        for (std::size_t k = 1; k < s.size(); ++k) s[k] += s[k - 1];
    for (int r = 0; r < gf.d2; ++r)
        for (std::size_t k = 2; k < s.size(); ++k) s[k] += s[k - 2];
    return s;
}

std::string render(const RationalGF& gf) {
    std::string num = render(gf.numerator, 'w');
    if (gf.is_zero() || (gf.d1 == 0 && gf.d2 == 0)) return num;
    auto factor = [](const char* base, int e) {
        std::string s = base;
        if (e > 1) s += "^" + std::to_string(e);
        return s;
    };
    std::string den;
    if (gf.d1 > 0) den += factor("(1-w)", gf.d1);
    if (gf.d2 > 0) den += factor("(1-w^2)", gf.d2);
    if (gf.d1 > 0 && gf.d2 > 0) den = "(" + den + ")";
    bool compound = std::count_if(gf.numerator.coeffs().begin(), gf.numerator.coeffs().end(),
                                  [](const mpz_class& c) { return c != 0; }) > 1;
    return (compound ? "(" + num + ")" : num) + "/" + den;
}

bool gf_equivalent(const RationalGF& gf, const RationalFunction& other) {
    return same_function(gf.as_function(), other);
}

// --- conjectures -----------------------------------------------------------------

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Violated: return "violated";
        case Verdict::NotApplicable: return "n/a";
    }
    return "?";
}

const ConjectureItem& ConjectureReport::item(const std::string& id) const {
    for (const auto& it : items)
        if (it.id == id) return it;
    throw std::out_of_range("no conjecture item " + id);
}

bool ConjectureReport::any_violated() const {
    return std::any_of(items.begin(), items.end(), [](const auto& i) { return i.verdict == Verdict::Violated; });
}

namespace {

ConjectureItem holds(std::string id, std::string note = {}) { return {std::move(id), Verdict::Holds, {}, std::move(note)}; }
ConjectureItem violated(std::string id, std::optional<std::int64_t> t, std::string note) {
    return {std::move(id), Verdict::Violated, t, std::move(note)};
}
ConjectureItem not_applicable(std::string id, std::string note) {
    return {std::move(id), Verdict::NotApplicable, {}, std::move(note)};
}

// first t in [from, seq.size()) stepping by `step` where pred(seq[t]) fails
std::optional<std::int64_t> first_failure(std::span<const std::uint64_t> seq, std::size_t from, std::size_t step,
                                          const std::function<bool(std::uint64_t)>& pred) {
    for (std::size_t t = from; t < seq.size(); t += step)
        if (!pred(seq[t])) return static_cast<std::int64_t>(t);
    return std::nullopt;
}

std::optional<std::string> negative_coefficient(const QPoly& p, const char* name) {
    for (int k = 0; k <= p.degree(); ++k)
        if (p.coeff(k) < 0)
            return std::string("coefficient of t^") + std::to_string(k) + " in " + name + " is " + p.coeff(k).get_str();
    return std::nullopt;
}

std::optional<std::string> bad_numerator(const RationalGF& gf, bool even_only) {
    for (int k = 0; k <= gf.numerator.degree(); ++k) {
        const auto& c = gf.numerator.coeff(k);
        if (c < 0) return "coefficient of w^" + std::to_string(k) + " in G is " + c.get_str();
        if (even_only && k % 2 == 1 && c != 0) return "G has odd power w^" + std::to_string(k);
    }
    return std::nullopt;
}

std::string upto(std::span<const std::uint64_t> seq) { return "checked t <= " + std::to_string(seq.size() - 1); }

}  // namespace

ConjectureReport check_conjectures(const Partition& mu, const Partition& nu, const Partition& la,
                                   std::span<const std::uint64_t> seq, const std::optional<QuasiPolynomial2>& qp,
                                   const std::optional<RationalGF>& gf, const std::string& fit_failure) {
    if (seq.size() < 3) throw ValidationError("conjecture checks need the sequence through t = 2");
    ConjectureReport r;
    r.parity = triple_parity(mu, nu, la);
    const auto n1 = seq[1], n2 = seq[2];
    const std::string values = "n=" + std::to_string(n1) + ", n_2=" + std::to_string(n2);
    const bool fitted = qp && gf;

    if (r.parity == Parity::Even) {
        // E(i)
        if (auto t = first_failure(seq, 1, 1, [&](auto v) { return (v > 0) == (n1 > 0); }))
            r.items.push_back(violated("E(i)", t, values + ", n_t=" + std::to_string(seq[*t])));
        else
            r.items.push_back(holds("E(i)", (n1 > 0 ? "positive, " : "zero, ") + upto(seq)));
        // E(ii)
        bool premise = n1 == 1 && n2 == 1;
        auto not_one = first_failure(seq, 2, 1, [](auto v) { return v == 1; });
        if (premise && not_one)
            r.items.push_back(violated("E(ii)", not_one, values + ", n_t=" + std::to_string(seq[*not_one])));
        else if (premise)
            r.items.push_back(holds("E(ii)", "all n_t = 1, " + upto(seq)));
        else if (!not_one)
            r.items.push_back(violated("E(ii)", 1, values + " but n_t = 1 for every t > 1"));
        else
            r.items.push_back(not_applicable("E(ii)", values + ", premise not met"));
        // E(iii)
        if (fitted)
            r.items.push_back(holds("E(iii)", "quasi-period " + std::string(qp->is_polynomial() ? "1" : "2") +
                                                  ", degree " + std::to_string(qp->degree())));
        else
            r.items.push_back(violated("E(iii)", std::nullopt, fit_failure));
        // E(iv), E(v)
        if (!fitted) {
            r.items.push_back(not_applicable("E(iv)", "no fit"));
            r.items.push_back(not_applicable("E(v)", "no fit"));
        } else {
            auto bad = negative_coefficient(qp->p_even, "P_e");
            if (!bad) bad = negative_coefficient(qp->p_odd, "P_o");
            r.items.push_back(bad ? violated("E(iv)", std::nullopt, *bad) : holds("E(iv)"));
            auto badg = bad_numerator(*gf, false);
            r.items.push_back(badg ? violated("E(v)", std::nullopt, *badg) : holds("E(v)", "G = " + render(gf->numerator, 'w')));
        }
        return r;
    }

    // odd total weight
    if (auto t = first_failure(seq, 2, 2, [&](auto v) { return (v > 0) == (n2 > 0); }))
        r.items.push_back(violated("O(i)", t, values + ", n_t=" + std::to_string(seq[*t])));
    else
        r.items.push_back(holds("O(i)", (n2 > 0 ? "positive, " : "zero, ") + upto(seq)));

    auto not_one = first_failure(seq, 2, 2, [](auto v) { return v == 1; });
    if (n2 == 1 && not_one)
        r.items.push_back(violated("O(ii)", not_one, values + ", n_t=" + std::to_string(seq[*not_one])));
    else if (n2 == 1)
        r.items.push_back(holds("O(ii)", "all even n_t = 1, " + upto(seq)));
    else
        r.items.push_back(not_applicable("O(ii)", values + ", premise not met"));

    if (auto t = first_failure(seq, 1, 2, [](auto v) { return v == 0; }))
        r.items.push_back(violated("O(iii)", t, "odd t with nonzero value " + std::to_string(seq[*t])));
    else if (!fitted)
        r.items.push_back(violated("O(iii)", std::nullopt, fit_failure));
    else if (!qp->p_odd.is_zero())
        r.items.push_back(violated("O(iii)", std::nullopt, "P_o is not zero"));
    else if (gf->d1 != 0)
        r.items.push_back(violated("O(iii)", std::nullopt, "d1 = " + std::to_string(gf->d1)));
    else if (auto odd = bad_numerator(*gf, true); odd && odd->starts_with("G has odd"))
        r.items.push_back(violated("O(iii)", std::nullopt, *odd));
    else
        r.items.push_back(holds("O(iii)", "P_o = 0, d1 = 0, degree " + std::to_string(qp->degree())));

    if (!fitted) {
        r.items.push_back(not_applicable("O(iv)", "no fit"));
        r.items.push_back(not_applicable("O(v)", "no fit"));
    } else {
        auto bad = negative_coefficient(qp->p_even, "P_e");
        r.items.push_back(bad ? violated("O(iv)", std::nullopt, *bad) : holds("O(iv)"));
        auto badg = bad_numerator(*gf, true);
        if (!badg && gf->d1 != 0) badg = "d1 = " + std::to_string(gf->d1);
        r.items.push_back(badg ? violated("O(v)", std::nullopt, *badg) : holds("O(v)", "G = " + render(gf->numerator, 'w')));
    }
    return r;
}

StretchResult analyse_sequence(const Partition& mu, const Partition& nu, const Partition& la,
                               std::vector<std::uint64_t> seq, int degree_bound) {
    StretchResult r{mu, nu, la, std::move(seq), degree_bound < 0 ? default_degree_bound(mu, nu, la) : degree_bound,
                    {}, {}, {}};
    std::string failure;
    std::int64_t failed_t = -1;
    std::optional<QuasiPolynomial2> qp;
    std::optional<RationalGF> gf;
    try {
        qp = fit_quasi_polynomial(r.sequence, r.degree_bound);
        gf = to_generating_function(*qp);
        r.qp = *qp;
        r.gf = *gf;
    } catch (const FitError& e) {
        failure = e.what();
        failed_t = e.t();
    }
    r.report = check_conjectures(mu, nu, la, r.sequence, qp, gf, failure);
    for (auto& it : r.report.items)
        if (!failure.empty() && it.note == failure && failed_t >= 0) it.witness_t = failed_t;
    return r;
}

StretchResult analyse_stretch(const Partition& mu, const Partition& nu, const Partition& la, int t_max,
                              int degree_bound, const SequenceOptions& opts) {
    if (degree_bound < 0) degree_bound = default_degree_bound(mu, nu, la);
    if (t_max < 0) t_max = required_samples(degree_bound) - 1;
    return analyse_sequence(mu, nu, la, stretched_sequence(mu, nu, la, t_max, opts), degree_bound);
}

ConjectureReport check_conjectures(const Partition& mu, const Partition& nu, const Partition& la, int t_max,
                                   const SequenceOptions& opts) {
    return analyse_stretch(mu, nu, la, t_max, -1, opts).report;
}

// --- stability -------------------------------------------------------------------

std::array<Partition, 3> stability_triple(const StabilityConfig& cfg, int a) {
    if (a < 0) throw ValidationError("a must be nonnegative");
    auto make = [&](const Partition& p) {
        std::vector<std::int64_t> parts = p.parts();
        if (cfg.mode == StabilityConfig::Mode::HeadIncrement) {
            if (parts.empty()) parts.push_back(0);
            parts[0] = checked::add(parts[0], a);
        } else {
            if (!parts.empty() && parts[0] > a)
                throw ValidationError("(" + std::to_string(a) + "," + render(p) + ") is not a partition");
            parts.insert(parts.begin(), a);
        }
        while (!parts.empty() && parts.back() == 0) parts.pop_back();
        return Partition(std::move(parts));
    };
    return {make(cfg.mu), make(cfg.nu), make(cfg.la)};
}

StabilityTable stability_scan(const StabilityConfig& cfg) {
    if (cfg.a_min > cfg.a_max) throw ValidationError("empty a-range");
    StabilityTable table;
    for (int a = cfg.a_min; a <= cfg.a_max; ++a) {
        auto [mu, nu, la] = stability_triple(cfg, a);
        auto r = analyse_stretch(mu, nu, la, cfg.t_max, cfg.degree_bound, cfg.seq);
        if (r.report.any_violated()) {
            const auto& e = r.report.item(r.report.parity == Parity::Even ? "E(iii)" : "O(iii)");
            if (e.verdict == Verdict::Violated) throw FitError("a=" + std::to_string(a) + ": " + e.note, e.witness_t.value_or(-1));
        }
        table.rows.push_back({a, mu, nu, la, std::move(r.sequence), r.qp, r.gf});
    }
    for (int parity = 0; parity < 2; ++parity) {
        std::vector<const StabilityRow*> rows;
        for (const auto& row : table.rows)
            if (row.a % 2 == parity) rows.push_back(&row);
        // walk back from the end while results agree with the last one
        if (rows.size() < 2) continue;
        std::size_t start = rows.size() - 1;
        while (start > 0 && rows[start - 1]->gf == rows.back()->gf) --start;
        if (start + 1 < rows.size()) (parity == 0 ? table.onset_even : table.onset_odd) = rows[start]->a;
    }
    return table;
}

// --- JSON --------------------------------------------------------------------------

namespace {

nlohmann::json rational_array(const QPoly& p) {
    auto a = nlohmann::json::array();
    for (const auto& c : p.coeffs()) a.push_back(c.get_str());
    return a;
}

QPoly rational_poly(const nlohmann::json& a) {
    std::vector<mpq_class> c;
    for (const auto& x : a) {
        mpq_class q(x.is_string() ? x.get<std::string>() : std::to_string(x.get<std::int64_t>()));
        q.canonicalize();
        c.push_back(q);
    }
    return QPoly(std::move(c));
}

nlohmann::json integer_value(const mpz_class& z) {
    if (z.fits_slong_p()) return z.get_si();
    return z.get_str();
}

mpz_class integer_of(const nlohmann::json& x) {
    return x.is_string() ? mpz_class(x.get<std::string>()) : mpz_class(std::to_string(x.get<std::int64_t>()));
}

nlohmann::json partition_json(const Partition& p) { return p.parts(); }

}  // namespace

nlohmann::json to_json(const QuasiPolynomial2& qp) {
    return {{"p_even", rational_array(qp.p_even)}, {"p_odd", rational_array(qp.p_odd)}};
}

nlohmann::json to_json(const RationalGF& gf) {
    auto num = nlohmann::json::array();
    for (const auto& c : gf.numerator.coeffs()) num.push_back(integer_value(c));
    return {{"numerator", num}, {"d1", gf.d1}, {"d2", gf.d2}, {"text", render(gf)}};
}

nlohmann::json to_json(const ConjectureReport& r) {
    auto items = nlohmann::json::array();
    for (const auto& i : r.items) {
        nlohmann::json j{{"id", i.id}, {"verdict", to_string(i.verdict)}, {"note", i.note}};
        j["witness_t"] = i.witness_t ? nlohmann::json(*i.witness_t) : nlohmann::json(nullptr);
        items.push_back(j);
    }
    return {{"parity", r.parity == Parity::Even ? "even" : "odd"}, {"items", items}};
}

nlohmann::json to_json(const StretchResult& r) {
    nlohmann::json j;
    j["triple"] = {partition_json(r.mu), partition_json(r.nu), partition_json(r.la)};
    j["sequence"] = r.sequence;
    j["degree_bound"] = r.degree_bound;
    j["p_even"] = rational_array(r.qp.p_even);
    j["p_odd"] = rational_array(r.qp.p_odd);
    j["gf"] = to_json(r.gf);
    j["report"] = to_json(r.report);
    return j;
}

StretchResult stretch_result_from_json(const nlohmann::json& j) {
    StretchResult r;
    try {
        auto part = [](const nlohmann::json& a) { return Partition(a.get<std::vector<std::int64_t>>()); };
        r.mu = part(j.at("triple").at(0));
        r.nu = part(j.at("triple").at(1));
        r.la = part(j.at("triple").at(2));
        r.sequence = j.at("sequence").get<std::vector<std::uint64_t>>();
        r.degree_bound = j.value("degree_bound", 0);
        r.qp = {rational_poly(j.at("p_even")), rational_poly(j.at("p_odd"))};
        std::vector<mpz_class> num;
        for (const auto& c : j.at("gf").at("numerator")) num.push_back(integer_of(c));
        r.gf = {ZPoly(std::move(num)), j.at("gf").at("d1").get<int>(), j.at("gf").at("d2").get<int>()};
        r.report.parity = j.at("report").at("parity") == "even" ? Parity::Even : Parity::Odd;
        for (const auto& i : j.at("report").at("items")) {
            ConjectureItem it;
            it.id = i.at("id");
            auto v = i.at("verdict").get<std::string>();
            it.verdict = v == "holds" ? Verdict::Holds : v == "violated" ? Verdict::Violated : Verdict::NotApplicable;
            if (!i.at("witness_t").is_null()) it.witness_t = i.at("witness_t").get<std::int64_t>();
            it.note = i.value("note", "");
            r.report.items.push_back(std::move(it));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("stretch result JSON: ") + e.what());
    }
    return r;
}

}  // namespace nlhive
