#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace nlhive {

enum class Parity { Even, Odd };

/// Weakly decreasing sequence of nonnegative integers, stored without
/// trailing zeros. Padding to a fixed length is done by callers via padded().
///
/// Parts are int64 and every arithmetic operation on them is overflow
/// checked (OverflowError), so stretched labels can never wrap silently.
class Partition {
public:
    Partition() = default;
    Partition(std::initializer_list<std::int64_t> parts);
    explicit Partition(std::vector<std::int64_t> parts);

    const std::vector<std::int64_t>& parts() const noexcept { return parts_; }
    std::size_t length() const noexcept { return parts_.size(); }
    bool empty() const noexcept { return parts_.empty(); }

    /// Part i (0-based); zero past the stored length.
    std::int64_t operator[](std::size_t i) const noexcept { return i < parts_.size() ? parts_[i] : 0; }

    std::int64_t weight() const;

    /// Parts copied into a vector of exactly n entries, zero padded.
    std::vector<std::int64_t> padded(std::size_t n) const;

    /// Each part multiplied by t; t = 0 gives the empty partition.
    Partition stretch(std::int64_t t) const;

    /// Componentwise containment of Young diagrams.
    bool contains(const Partition& other) const noexcept;

    auto operator<=>(const Partition&) const = default;

private:
    std::vector<std::int64_t> parts_;
};

std::int64_t weight(const Partition& p);
Partition stretch(const Partition& p, std::int64_t t);

/// Parity of |mu| + |nu| + |la|.
Parity triple_parity(const Partition& mu, const Partition& nu, const Partition& la);

/// Accepts "9,7,5,4", "[2,1,1]", "(3,1)", "" and whitespace between tokens.
/// Trailing zeros are allowed and stripped; increasing sequences are rejected.
Partition parse_partition(std::string_view text);

/// Comma separated parts, no brackets; the empty partition renders as "".
std::string render(const Partition& p);

std::ostream& operator<<(std::ostream& os, const Partition& p);

/// All partitions of `total` with at most `max_len` parts, each part at most
/// `max_part`, in decreasing lexicographic order.
std::vector<Partition> partitions_of(std::int64_t total, std::size_t max_len, std::int64_t max_part);

/// Every partition contained in the given one, including the empty one.
std::vector<Partition> subpartitions(const Partition& outer);

}  // namespace nlhive
