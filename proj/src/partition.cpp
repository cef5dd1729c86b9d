#include "nlhive/partition.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <ostream>

#include "nlhive/errors.hpp"

namespace nlhive {

namespace {

void validate_and_strip(std::vector<std::int64_t>& parts) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] < 0) throw ValidationError("partition parts must be nonnegative");
        if (i > 0 && parts[i] > parts[i - 1])
            throw ValidationError("partition parts must be weakly decreasing");
    }
    while (!parts.empty() && parts.back() == 0) parts.pop_back();
}

}  // namespace

Partition::Partition(std::initializer_list<std::int64_t> parts) : parts_(parts) {
    validate_and_strip(parts_);
}

Partition::Partition(std::vector<std::int64_t> parts) : parts_(std::move(parts)) {
    validate_and_strip(parts_);
}

std::int64_t Partition::weight() const {
    std::int64_t w = 0;
    for (auto p : parts_) w = checked::add(w, p);
    return w;
}

std::vector<std::int64_t> Partition::padded(std::size_t n) const {
    if (n < parts_.size()) throw ValidationError("cannot pad partition to a shorter length");
    std::vector<std::int64_t> out(parts_);
    out.resize(n, 0);
    return out;
}

Partition Partition::stretch(std::int64_t t) const {
    if (t < 0) throw ValidationError("stretch factor must be nonnegative");
    std::vector<std::int64_t> out;
    out.reserve(parts_.size());
    for (auto p : parts_) out.push_back(checked::mul(p, t));
    return Partition(std::move(out));
}

bool Partition::contains(const Partition& other) const noexcept {
    if (other.length() > length()) return false;
    for (std::size_t i = 0; i < other.length(); ++i)
        if (other.parts_[i] > parts_[i]) return false;
    return true;
}

std::int64_t weight(const Partition& p) { return p.weight(); }

Partition stretch(const Partition& p, std::int64_t t) { return p.stretch(t); }

Parity triple_parity(const Partition& mu, const Partition& nu, const Partition& la) {
    auto total = checked::add(checked::add(mu.weight(), nu.weight()), la.weight());
    return (total % 2 == 0) ? Parity::Even : Parity::Odd;
}

Partition parse_partition(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (!s.empty() && (s.front() == '[' || s.front() == '(')) {
        char close = s.front() == '[' ? ']' : ')';
        if (s.back() != close) throw ParseError("unbalanced brackets in partition '" + std::string(text) + "'");
        s = s.substr(1, s.size() - 2);
    }
    std::vector<std::int64_t> parts;
    if (s.empty()) return Partition();
    std::size_t pos = 0;
    while (true) {
        auto comma = s.find(',', pos);
        std::string_view tok(s.data() + pos, (comma == std::string::npos ? s.size() : comma) - pos);
        if (tok.empty()) throw ParseError("empty part in partition '" + std::string(text) + "'");
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
            throw ParseError("bad part '" + std::string(tok) + "' in partition '" + std::string(text) + "'");
        parts.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return Partition(std::move(parts));
}

std::string render(const Partition& p) {
    std::string out;
    for (std::size_t i = 0; i < p.length(); ++i) {
        if (i) out.push_back(',');
        out += std::to_string(p[i]);
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Partition& p) { return os << '(' << render(p) << ')'; }

namespace {

void partitions_rec(std::int64_t remaining, std::size_t slots, std::int64_t cap, std::vector<std::int64_t>& cur,
                    std::vector<Partition>& out) {
    if (remaining == 0) {
        out.emplace_back(cur);
        return;
    }
    if (slots == 0) return;
    for (std::int64_t p = std::min(remaining, cap); p >= 1; --p) {
        // the remaining slots cannot absorb more than p each
        if (p * static_cast<std::int64_t>(slots) < remaining) break;
        cur.push_back(p);
        partitions_rec(remaining - p, slots - 1, p, cur, out);
        cur.pop_back();
    }
}

void subpartitions_rec(const Partition& outer, std::size_t i, std::int64_t cap, std::vector<std::int64_t>& cur,
                       std::vector<Partition>& out) {
    out.emplace_back(cur);
    if (i >= outer.length()) return;
    for (std::int64_t p = 1; p <= std::min(cap, outer[i]); ++p) {
        cur.push_back(p);
        subpartitions_rec(outer, i + 1, p, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Partition> partitions_of(std::int64_t total, std::size_t max_len, std::int64_t max_part) {
    std::vector<Partition> out;
    if (total < 0) return out;
    std::vector<std::int64_t> cur;
    partitions_rec(total, max_len, max_part, cur, out);
    return out;
}

std::vector<Partition> subpartitions(const Partition& outer) {
    std::vector<Partition> out;
    std::vector<std::int64_t> cur;
    subpartitions_rec(outer, 0, outer.empty() ? 0 : outer[0], cur, out);
    return out;
}

}  // namespace nlhive
