#include "nlhive/hive_lr.hpp"

#include <algorithm>
#include <functional>

#include "nlhive/errors.hpp"

namespace nlhive {

using geom::Affine;
using geom::Vertex;

namespace {

std::vector<std::int64_t> partial_sums(const Partition& p, int n, std::int64_t start = 0) {
    std::vector<std::int64_t> s(n + 1, start);
    for (int k = 1; k <= n; ++k) s[k] = checked::add(s[k - 1], p[k - 1]);
    return s;
}

bool lr_vanishes(const Partition& mu, const Partition& nu, const Partition& la) {
    return la.weight() != checked::add(mu.weight(), nu.weight()) || la.length() > mu.length() + nu.length() ||
           !la.contains(mu) || !la.contains(nu);
}

}  // namespace

HiveFrame make_hive_frame(const Partition& mu, const Partition& nu, const Partition& la, int n) {
    if (n < 1) throw ValidationError("hive side length must be positive");
    auto un = static_cast<std::size_t>(n);
    if (mu.length() > un || nu.length() > un || la.length() > un)
        throw ValidationError("hive side length " + std::to_string(n) + " is shorter than a partition");

    HiveFrame f;
    f.n = n;
    auto left = partial_sums(mu, n);
    auto bottom = partial_sums(la, n);
    auto right = partial_sums(nu, n, mu.weight());

    for (int i = 0; i <= n; ++i) {
        for (int j = i; j <= n; ++j) {
            Affine a;
            if (i == 0)
                a.constant = left[j];
            else if (i == j)
                a.constant = bottom[i];
            else if (j == n)
                a.constant = right[i];
            else {
                a.terms.push_back({static_cast<int>(f.free.size()), 1});
                f.free.push_back({i, j});
            }
            f.label[{i, j}] = a;
        }
    }
    for (const auto& r : geom::rhombi(geom::lr_triangles(n)))
        f.constraints.push_back(geom::rhombus_inequality(r, f.label.at(r.obtuse[0]), f.label.at(r.obtuse[1]),
                                                         f.label.at(r.acute[0]), f.label.at(r.acute[1])));
    return f;
}

std::uint64_t count_lr(const Partition& mu, const Partition& nu, const Partition& la, int n,
                       const EnumerationLimits& limits) {
    auto frame = make_hive_frame(mu, nu, la, n);
    if (lr_vanishes(mu, nu, la)) return 0;
    LatticeCounter counter(static_cast<int>(frame.free.size()), std::move(frame.constraints));
    return counter.count(limits).count;
}

std::uint64_t count_lr_auto(const Partition& mu, const Partition& nu, const Partition& la,
                            const EnumerationLimits& limits) {
    if (lr_vanishes(mu, nu, la)) return 0;
    // c^la_{mu,0} = [la == mu]; saves building a frame in the common LR-sum case
    if (mu.empty()) return nu == la ? 1 : 0;
    if (nu.empty()) return mu == la ? 1 : 0;
    auto n = static_cast<int>(std::max({mu.length(), nu.length(), la.length()}));
    return count_lr(mu, nu, la, n, limits);
}

// --- Schur oracle ---------------------------------------------------------

namespace {

class KostkaTable {
public:
    std::uint64_t get(const std::vector<std::int64_t>& shape, std::vector<std::int64_t> content) {
        // Kostka numbers are symmetric in the content, so canonicalise it
        std::erase(content, 0);
        std::sort(content.begin(), content.end(), std::greater<>());
        return rec(shape, content);
    }

private:
    std::uint64_t rec(const std::vector<std::int64_t>& shape, std::vector<std::int64_t>& content) {
        if (content.empty()) return shape.empty() ? 1 : 0;
        if (shape.size() > content.size()) return 0;
        auto key = std::make_pair(shape, content);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        // the largest entry fills a horizontal strip of size content.back()
        std::int64_t k = content.back();
        content.pop_back();
        std::uint64_t total = 0;
        std::vector<std::int64_t> inner(shape.size());
        std::function<void(std::size_t, std::int64_t)> strip = [&](std::size_t i, std::int64_t left) {
            if (i == shape.size()) {
                if (left != 0) return;
                std::vector<std::int64_t> trimmed(inner);
                while (!trimmed.empty() && trimmed.back() == 0) trimmed.pop_back();
                total = checked::add(total, rec(trimmed, content));
                return;
            }
            std::int64_t floor_part = i + 1 < shape.size() ? shape[i + 1] : 0;
            for (std::int64_t v = shape[i]; v >= floor_part; --v) {
                std::int64_t removed = shape[i] - v;
                if (removed > left) break;
                inner[i] = v;
                strip(i + 1, left - removed);
            }
        };
        strip(0, k);
        content.push_back(k);
        memo_[key] = total;
        return total;
    }

    std::map<std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>, std::uint64_t> memo_;
};

// [x^kappa] s_mu s_nu = sum over compositions a <= kappa of K_{mu,a} K_{nu,kappa-a}
std::int64_t product_monomial(KostkaTable& kt, const Partition& mu, const Partition& nu,
                              const std::vector<std::int64_t>& kappa) {
    std::int64_t total = 0;
    std::vector<std::int64_t> a(kappa.size()), b(kappa.size());
    std::int64_t need = mu.weight();
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
        if (i == kappa.size()) {
            if (left != 0) return;
            for (std::size_t k = 0; k < kappa.size(); ++k) b[k] = kappa[k] - a[k];
            auto x = kt.get(mu.parts(), a);
            if (x == 0) return;
            auto y = kt.get(nu.parts(), b);
            total = checked::add(total, checked::mul(static_cast<std::int64_t>(x), static_cast<std::int64_t>(y)));
            return;
        }
        for (std::int64_t v = 0; v <= std::min(kappa[i], left); ++v) {
            a[i] = v;
            rec(i + 1, left - v);
        }
    };
    rec(0, need);
    return total;
}

}  // namespace

std::uint64_t kostka(const Partition& shape, std::vector<std::int64_t> content) {
    for (auto c : content)
        if (c < 0) throw ValidationError("negative content in Kostka number");
    std::int64_t s = 0;
    for (auto c : content) s = checked::add(s, c);
    if (s != shape.weight()) return 0;
    KostkaTable kt;
    return kt.get(shape.parts(), std::move(content));
}

std::uint64_t schur_coefficient_oracle(const Partition& mu, const Partition& nu, const Partition& la) {
    if (la.weight() != checked::add(mu.weight(), nu.weight())) return 0;
    std::size_t nvars = std::max(la.length(), mu.length() + nu.length());
    if (nvars == 0) return 1;
    if (la.length() > nvars) return 0;

    KostkaTable kt;
    // Schur coefficients found so far, for every kappa lexicographically above la
    std::vector<std::pair<Partition, std::int64_t>> found;
    for (const auto& kappa : partitions_of(la.weight(), nvars, la.weight())) {
        if (kappa < la) break;
        auto padded = kappa.padded(nvars);
        std::int64_t c = product_monomial(kt, mu, nu, padded);
        for (const auto& [rho, crho] : found) {
            if (crho == 0) continue;
            c = checked::sub(c, checked::mul(crho, static_cast<std::int64_t>(kt.get(rho.parts(), padded))));
        }
        if (c < 0) throw std::logic_error("negative Schur coefficient in oracle elimination");
        if (kappa == la) return static_cast<std::uint64_t>(c);
        found.emplace_back(kappa, c);
    }
    return 0;
}

}  // namespace nlhive
