#pragma once

#include <filesystem>
#include <optional>
#include <ostream>

#include "nlde/study_config.hpp"

namespace nlde {

/// Dispatches to the harness, writes the result files plus
/// effective_config.json into `out_dir` (default: config.out) and prints one
/// summary line per table row. Returns 0 on success; on failure prints the
/// failing cell and returns 1.
int run_study(const StudyConfig& config, std::ostream& log,
              const std::optional<std::filesystem::path>& out_dir = std::nullopt,
              int threads = 1);

/// Fast invariant suite (unitarity, projector algebra, transform round
/// trip, Strang reversibility, mass conservation, kernel equivalence).
/// Prints one line per check; true when all pass.
bool run_seed_check(std::ostream& log);

}  // namespace nlde
