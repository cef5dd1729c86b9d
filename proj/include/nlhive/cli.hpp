#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nlhive::cli {

enum class Format { Text, Json, Csv };
enum class Method { Hive, LrSum, Ct };

// Exit statuses are a stable contract for scripts and CI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitBudget = 2;
inline constexpr int kExitGoldenDiff = 3;

struct RunConfig {
    Method method = Method::Hive;
    Format format = Format::Text;
    int t_max = -1;  // < 0: command default
    std::uint64_t budget_nodes = 1'000'000'000ULL;
    double budget_secs = 600;
    std::optional<std::string> cache_dir;
    unsigned threads = 1;
};

/// Runs one command line (without the program name). Every flag may also be
/// set through NLHIVE_<FLAG> (e.g. NLHIVE_BUDGET_NODES); the command line wins.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nlhive::cli
