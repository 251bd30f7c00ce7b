#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "nlde/harness.hpp"

namespace nlde {

/// Scientific notation with 6 significant digits ("1.26046e-02").
std::string format_sci(double value);

/// CSV with a '#'-prefixed metadata block. One error row per epsilon
/// (descending), each followed by its "order" row when there are at least
/// two columns; absent orders are empty cells. The only line that varies
/// between identical runs is "# generated".
void write_table(std::ostream& os, const ConvergenceTable& table, bool with_timestamp = true);
void emit_table(const ConvergenceTable& table, const std::filesystem::path& path);

/// step,time,l2_error,h1_error,e_max,mass_drift,energy_drift
void write_series(std::ostream& os, const std::vector<ErrorRecord>& records,
                  const std::vector<std::pair<std::string, std::string>>& metadata);
void emit_series(const std::vector<ErrorRecord>& records,
                 const std::vector<std::pair<std::string, std::string>>& metadata,
                 const std::filesystem::path& path);

/// step,time,mass,energy,kinetic,mass_term,nonlinear,mass_drift,energy_drift
void emit_observables(const std::vector<Checkpoint>& checkpoints,
                      const std::vector<std::pair<std::string, std::string>>& metadata,
                      const std::filesystem::path& path);

}  // namespace nlde
