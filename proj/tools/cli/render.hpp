#pragma once

#include <string>

#include "commands.hpp"

namespace aberrant::cli {

/// Plain-text rendering of a report: one line per scalar, aligned two-row
/// tables for counter objects, and column tables for lists of records.
std::string render_text(const Report& report);

}  // namespace aberrant::cli
