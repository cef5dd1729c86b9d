#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "nlhive/stretch.hpp"

namespace nlhive {

// Golden corpus: JSON transcriptions of published tables. Format is
// described in docs/json-schema.md. Three entry kinds:
//   "triple"    one stretched family, checked by fitting or by evaluation
//   "stability" a head-increment / prepend scan with per-a rows and onsets
//   "weyl"      B/C/D tensor multiplicities against a quasi-polynomial

struct GoldenOptions {
    SequenceOptions seq;
    std::vector<std::string> only;  // entry ids; empty = all
    std::function<void(const std::string&)> progress;  // one call per entry
};

struct GoldenCheck {
    std::string entry;
    std::string what;  // "gf", "p_even", "onset_odd", ...
    bool pass = false;
    std::string detail;
};

struct GoldenReport {
    std::string corpus;
    std::vector<GoldenCheck> checks;
    std::vector<std::string> warnings;

    bool passed() const;
    std::size_t failures() const;
};

/// Throws ParseError for malformed entries, BudgetExceeded when a budget runs
/// out. A mismatch is not an exception: it is a failing check.
GoldenReport run_golden(const nlohmann::json& corpus, const GoldenOptions& opts = {});

/// An empty file, or one whose "entries" array is empty, passes with a warning.
GoldenReport run_golden_file(const std::filesystem::path& path, const GoldenOptions& opts = {});

nlohmann::json to_json(const GoldenReport& r);

/// Substitutes integer parameters (single letters other than t and w) into
/// a formula string before it is parsed: "(bt+2)" with b = 3 -> "((3)t+2)".
/// Partition strings ("a,b") are substituted bare.
std::string substitute_params(std::string_view formula, const nlohmann::json& params, bool parenthesize = true);

}  // namespace nlhive
