#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace nlhive {

/// Malformed user input (partition text, formula strings, CLI arguments).
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A value violates a documented precondition.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Checked integer arithmetic left the int64 range.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// An enumeration or expansion ran past its configured node/time/term budget.
/// No partial number is ever returned as if it were the answer; the partial
/// count is carried here for diagnostics only.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, std::uint64_t nodes_visited, std::uint64_t partial_count)
        : std::runtime_error(what), nodes_visited_(nodes_visited), partial_count_(partial_count) {}

    std::uint64_t nodes_visited() const noexcept { return nodes_visited_; }
    std::uint64_t partial_count() const noexcept { return partial_count_; }

private:
    std::uint64_t nodes_visited_;
    std::uint64_t partial_count_;
};

/// Sampled data is inconsistent with a quasi-period-2 quasi-polynomial of the
/// requested degree.
class FitError : public std::runtime_error {
public:
    explicit FitError(const std::string& what, std::int64_t t = -1) : std::runtime_error(what), t_(t) {}

    /// First sample that disagreed with the interpolant, or -1.
    std::int64_t t() const noexcept { return t_; }

private:
    std::int64_t t_;
};

/// The constant-term oracle refused because its truncation window could
/// influence the requested coefficient.
class TruncationRefused : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int64 overflow in addition");
    return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("int64 overflow in subtraction");
    return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int64 overflow in multiplication");
    return r;
}

inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("uint64 overflow in count accumulation");
    return r;
}

}  // namespace checked
}  // namespace nlhive
