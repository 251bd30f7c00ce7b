#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nlde/grid.hpp"
#include "nlde/integrators.hpp"
#include "nlde/model.hpp"

namespace nlde {

enum class StudyKind { run, temporal, spatial, long_time, oscillatory_table, energy_drift };

const char* to_string(StudyKind kind);
std::optional<StudyKind> parse_study_kind(std::string_view name);

/// Everything a study needs; produced by parse_config and echoed back into
/// every output file.
struct StudyConfig {
  StudyKind kind = StudyKind::run;
  std::string data = "accuracy-1d";
  /// Per-axis bounds; empty means the catalog entry's domain.
  std::vector<Interval> domain;
  /// Mode counts per grid (list for the spatial study); in 1D the second
  /// entry is 1.
  std::vector<std::array<int, 2>> modes{{64, 1}};
  /// true when the steps are kappa (oscillatory regime).
  bool oscillatory = false;
  std::vector<double> steps{0.01};
  std::vector<double> eps{1.0};
  double lambda1 = 0.0;
  double lambda2 = 1.0;
  SchemeKind scheme = SchemeKind::strang;
  /// T: the run reaches T / eps^2 (long-time) or T (oscillatory).
  double horizon = 1.0;
  long stride = 10;
  std::optional<double> step_ref;
  std::optional<std::array<int, 2>> modes_ref;
  std::string out = "out";

  int dim() const;
  Grid grid(std::array<int, 2> modes) const;
  ModelParams params(double epsilon) const;
  /// Final time of a run at this epsilon.
  double horizon_for(double epsilon) const;

  bool operator==(const StudyConfig&) const = default;
};

}  // namespace nlde
