#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nlde/integrators.hpp"
#include "nlde/study_config.hpp"

namespace nlde {

/// Study failure tagged with the table cell it came from.
class StudyError : public std::runtime_error {
 public:
  StudyError(std::string cell, const std::string& what)
      : std::runtime_error(cell + ": " + what), cell_(std::move(cell)) {}
  const std::string& cell() const { return cell_; }

 private:
  std::string cell_;
};

struct ErrorNorms {
  double l2 = 0.0;
  double h1 = 0.0;
};

/// Discrete L2 and H1 distances on the coarser of the two grids:
///   e = sqrt(h sum |U_j - V_j|^2 + h sum |U'_j - V'_j|^2).
/// Derivatives are taken at each field's own resolution and then
/// restricted by Fourier truncation. Grids must share the box and one mode
/// count must divide the other.
ErrorNorms h1_error(const SpinorField& numeric, const SpinorField& reference);

struct ErrorRecord {
  long step = 0;
  double time = 0.0;
  double l2_error = 0.0;
  double h1_error = 0.0;
  double running_max = 0.0;  // e_max(t_n)
  double mass_drift = 0.0;   // |m_n - m_0| / m_0
  double energy_drift = 0.0;  // |E_h^n - E_h^0|
};

/// Reference discretization for one epsilon of a study.
struct ReferencePlan {
  double step = 0.0;
  std::array<int, 2> modes{0, 1};
};

/// Default step: the smallest study step divided by max(16, ceil(step / 1e-4)).
/// Applies the defaults and checks that every study step is an integer
/// multiple of the reference step and every study grid divides the
/// reference grid. Throws std::invalid_argument naming the offending values.
ReferencePlan plan_reference(const StudyConfig& config, double epsilon);

/// Strang run on the reference discretization to horizon_for(epsilon),
/// keeping a field every `checkpoint_interval` time units (0: final only).
Trajectory reference_solution(const StudyConfig& config, double epsilon,
                              double checkpoint_interval = 0.0);

/// Estimated final-time error of the reference: step halving for temporal
/// studies, grid doubling for the spatial study. `reference`, when given,
/// is the already computed final reference state.
double reference_error_estimate(const StudyConfig& config, double epsilon,
                                const SpinorField* reference = nullptr);

/// log(e_coarse / e_fine) / log(ratio).
double observed_order(double e_coarse, double e_fine, double ratio);

/// Errors below this are treated as round-off: no order is reported.
inline constexpr double kRoundoffFloor = 1e-12;

struct ConvergenceTable {
  std::string title;
  std::string row_axis;     // "eps"
  std::string column_axis;  // "tau", "kappa" or "M"
  std::vector<double> row_values;
  std::vector<double> column_values;
  std::vector<std::vector<double>> errors;                // [row][column]
  std::vector<std::vector<std::optional<double>>> orders;  // [row][column], first absent
  std::vector<std::pair<std::string, std::string>> metadata;

  /// Fills `orders` from `errors`: between adjacent columns of one row,
  /// absent when either error is at the round-off floor. Column values are
  /// step sizes (order against their ratio) unless the axis is "M".
  void compute_orders();
};

struct LongTimeSeries {
  double epsilon = 0.0;
  double realized_final_time = 0.0;
  std::vector<ErrorRecord> records;
};

struct LongTimeResult {
  std::vector<LongTimeSeries> series;
  ConvergenceTable summary;  // final e_max per epsilon
};

struct RunResult {
  double realized_final_time = 0.0;
  std::vector<ErrorRecord> records;  // errors are zero: no reference
  std::vector<Checkpoint> checkpoints;
};

/// `threads` bounds the number of concurrently evaluated cells; results do
/// not depend on it.
LongTimeResult long_time_study(const StudyConfig& config, int threads = 1);
ConvergenceTable temporal_convergence(const StudyConfig& config, int threads = 1);
ConvergenceTable spatial_convergence(const StudyConfig& config, int threads = 1);
ConvergenceTable oscillatory_table(const StudyConfig& config, int threads = 1);
/// Max |E_h^n - E_h^0| over the checkpoints of each (eps, tau) cell.
ConvergenceTable energy_drift_study(const StudyConfig& config, int threads = 1);
RunResult run_single(const StudyConfig& config);

/// Metadata lines shared by every emitted table.
std::vector<std::pair<std::string, std::string>> describe_config(const StudyConfig& config);

}  // namespace nlde
