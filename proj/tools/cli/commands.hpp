#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "aberrant/error.hpp"
#include "spec_file.hpp"

namespace aberrant::cli {

using Report = nlohmann::ordered_json;

inline constexpr std::string_view kCommands[] = {"wlp",        "general-wlp",    "blocked-wlp", "twofi-wlp",
                                                 "complement", "construct-weak", "search",      "verify"};
inline constexpr std::string_view kCriteria[] = {"main", "q2", "blocked-main", "blocked-2fi", "twofi", "general"};

struct CommandOptions {
    /// Empty selects the command's default.
    std::string criterion;
    std::optional<std::uint64_t> budget_nodes;
    std::optional<double> budget_seconds;
    std::optional<int> r;
    /// search: direct, complement or weak.
    std::string method = "direct";
    /// search --criterion general: number of extra fitted columns.
    std::size_t extra = 0;
    unsigned threads = 1;
    bool prune = false;
    /// search: number of optimal designs listed.
    std::size_t show = 5;
};

Report run_command(std::string_view command, const DesignSpecFile& spec, const CommandOptions& options);

/// 0 success, 2 validation, 3 infeasible, 4 identity violation.
int exit_code(ErrorKind kind);

/// True when a verify report has a failing check.
bool has_failures(const Report& report);

}  // namespace aberrant::cli
