#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <optional>
#include <sstream>
#include <thread>

#include "nlde/harness.hpp"

namespace nlde {

namespace {

/// Runs fn(0..count-1) on up to `threads` workers. Every job writes its own
/// result slot, so the output does not depend on scheduling. The exception
/// of the lowest failing index is rethrown.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> failures(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const auto n = static_cast<std::size_t>(std::max(1, threads));
  if (n == 1 || count <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < std::min(n, count); ++t) pool.emplace_back(worker);
  }
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::vector<double> sorted_desc(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

const char* step_name(const StudyConfig& c) { return c.oscillatory ? "kappa" : "tau"; }

// Wraps any failure with the cell coordinates.
template <class Fn>
void in_cell(const std::string& cell, Fn&& fn) {
  try {
    fn();
  } catch (const StudyError&) {
    throw;
  } catch (const std::exception& e) {
    throw StudyError(cell, e.what());
  }
}

constexpr double kValidityRatio = 100.0;
// Cells below this are at round-off and exempt from the validity check.
constexpr double kValidityExempt = 1e-10;

void check_reference_validity(const std::string& cell, double error, double estimate) {
  if (error >= kValidityExempt && error < kValidityRatio * estimate) {
    throw StudyError(cell, "reference not accurate enough: cell error " + fmt(error) +
                               " is less than 100x the reference error estimate " +
                               fmt(estimate));
  }
}

struct ReferenceFinal {
  std::optional<SpinorField> field;
  double time = 0.0;
  double estimate = 0.0;
  ReferencePlan plan;
};

ReferenceFinal final_reference(const StudyConfig& config, double epsilon) {
  const Trajectory t = reference_solution(config, epsilon);
  const double estimate = reference_error_estimate(config, epsilon, &t.final_field);
  return {t.final_field, t.checkpoints.back().time, estimate, plan_reference(config, epsilon)};
}

void check_same_time(const std::string& cell, double a, double b) {
  if (std::abs(a - b) > 1e-9 * std::max(1.0, std::abs(b))) {
    throw StudyError(cell, "realized final time " + fmt(a) + " differs from the reference time " +
                               fmt(b) + "; choose T commensurate with the step");
  }
}

ConvergenceTable make_table(const StudyConfig& config, std::string title, std::string column_axis,
                            std::vector<double> columns) {
  ConvergenceTable t;
  t.title = std::move(title);
  t.row_axis = "eps";
  t.column_axis = std::move(column_axis);
  t.row_values = sorted_desc(config.eps);
  t.column_values = std::move(columns);
  t.errors.assign(t.row_values.size(), std::vector<double>(t.column_values.size(), 0.0));
  t.metadata = describe_config(config);
  return t;
}

void add_reference_metadata(ConvergenceTable& t, const std::vector<ReferenceFinal>& refs,
                            const char* step) {
  for (std::size_t r = 0; r < refs.size(); ++r) {
    const std::string key = "reference[eps=" + fmt(t.row_values[r]) + "]";
    std::ostringstream os;
    os.precision(17);
    os << step << "_ref=" << refs[r].plan.step << " M_ref=" << refs[r].plan.modes[0];
    if (refs[r].plan.modes[1] > 1) os << "x" << refs[r].plan.modes[1];
    os << " final_time=" << refs[r].time << " error_estimate=" << refs[r].estimate;
    t.metadata.emplace_back(key, os.str());
  }
}

/// Final-time error at every (eps, step) cell against a per-eps reference.
ConvergenceTable temporal_table(const StudyConfig& config, int threads, std::string title) {
  ConvergenceTable table =
      make_table(config, std::move(title), step_name(config), sorted_desc(config.steps));
  const auto& rows = table.row_values;
  const auto& cols = table.column_values;
  const std::array<int, 2> modes = config.modes.front();

  std::vector<ReferenceFinal> refs(rows.size());
  parallel_for(rows.size(), threads, [&](std::size_t r) {
    in_cell("eps=" + fmt(rows[r]) + " reference", [&] { refs[r] = final_reference(config, rows[r]); });
  });

  parallel_for(rows.size() * cols.size(), threads, [&](std::size_t job) {
    const std::size_t r = job / cols.size();
    const std::size_t c = job % cols.size();
    const std::string cell = "eps=" + fmt(rows[r]) + ", " + step_name(config) + "=" + fmt(cols[c]);
    in_cell(cell, [&] {
      const Grid grid = config.grid(modes);
      const SchemeSpec scheme = SchemeSpec::make(config.scheme, cols[c], config.horizon_for(rows[r]));
      EvolveOptions opts;
      opts.record_observables = false;
      opts.stride = std::max<long>(1, scheme.step_count);
      const Trajectory t = evolve(initial_data(config.data, grid), scheme, config.params(rows[r]), opts);
      check_same_time(cell, scheme.realized_final_time(), refs[r].time);
      table.errors[r][c] = h1_error(t.final_field, *refs[r].field).h1;
    });
  });

  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      check_reference_validity("eps=" + fmt(rows[r]) + ", " + step_name(config) + "=" + fmt(cols[c]),
                               table.errors[r][c], refs[r].estimate);
    }
  }
  add_reference_metadata(table, refs, step_name(config));
  table.compute_orders();
  return table;
}

}  // namespace

ConvergenceTable temporal_convergence(const StudyConfig& config, int threads) {
  return temporal_table(config, threads, "temporal error e(t) at t = T/eps^2");
}

ConvergenceTable oscillatory_table(const StudyConfig& config, int threads) {
  if (!config.oscillatory) {
    throw std::invalid_argument("oscillatory_table: configure kappa (oscillatory regime)");
  }
  return temporal_table(config, threads, "temporal error e(s) of the oscillatory NLDE at s = T");
}

ConvergenceTable spatial_convergence(const StudyConfig& config, int threads) {
  std::vector<double> columns;
  std::vector<std::size_t> order(config.modes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return config.modes[a][0] < config.modes[b][0]; });
  std::vector<std::array<int, 2>> modes;
  for (auto i : order) {
    modes.push_back(config.modes[i]);
    columns.push_back(config.modes[i][0]);
  }

  ConvergenceTable table = make_table(config, "spatial error e(t) at t = T/eps^2", "M", columns);
  const auto& rows = table.row_values;

  std::vector<ReferenceFinal> refs(rows.size());
  parallel_for(rows.size(), threads, [&](std::size_t r) {
    in_cell("eps=" + fmt(rows[r]) + " reference", [&] { refs[r] = final_reference(config, rows[r]); });
  });

  parallel_for(rows.size() * modes.size(), threads, [&](std::size_t job) {
    const std::size_t r = job / modes.size();
    const std::size_t c = job % modes.size();
    const std::string cell = "eps=" + fmt(rows[r]) + ", M=" + std::to_string(modes[c][0]);
    in_cell(cell, [&] {
      const Grid grid = config.grid(modes[c]);
      const SchemeSpec scheme =
          SchemeSpec::make(SchemeKind::strang, refs[r].plan.step, config.horizon_for(rows[r]));
      EvolveOptions opts;
      opts.record_observables = false;
      opts.stride = std::max<long>(1, scheme.step_count);
      const Trajectory t = evolve(initial_data(config.data, grid), scheme, config.params(rows[r]), opts);
      table.errors[r][c] = h1_error(t.final_field, *refs[r].field).h1;
    });
  });

  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < modes.size(); ++c) {
      check_reference_validity("eps=" + fmt(rows[r]) + ", M=" + std::to_string(modes[c][0]),
                               table.errors[r][c], refs[r].estimate);
    }
  }
  add_reference_metadata(table, refs, step_name(config));
  table.compute_orders();
  return table;
}

LongTimeResult long_time_study(const StudyConfig& config, int threads) {
  const double tau = config.steps.front();
  const std::vector<double> rows = sorted_desc(config.eps);
  LongTimeResult result;
  result.series.resize(rows.size());
  std::vector<double> estimates(rows.size());

  parallel_for(rows.size(), threads, [&](std::size_t r) {
    const double eps = rows[r];
    in_cell("eps=" + fmt(eps), [&] {
      const Trajectory ref = reference_solution(config, eps, config.stride * tau);
      estimates[r] = reference_error_estimate(config, eps, &ref.final_field);

      const Grid grid = config.grid(config.modes.front());
      const SchemeSpec scheme = SchemeSpec::make(config.scheme, tau, config.horizon_for(eps));
      EvolveOptions opts;
      opts.stride = config.stride;
      opts.keep_fields = true;
      const Trajectory num = evolve(initial_data(config.data, grid), scheme, config.params(eps), opts);
      if (num.checkpoints.size() != ref.checkpoints.size()) {
        throw std::runtime_error("checkpoint count differs from the reference");
      }

      LongTimeSeries& s = result.series[r];
      s.epsilon = eps;
      s.realized_final_time = scheme.realized_final_time();
      const EnergyReport& first = num.checkpoints.front().observables;
      double running = 0.0;
      for (std::size_t i = 0; i < num.checkpoints.size(); ++i) {
        const Checkpoint& cp = num.checkpoints[i];
        check_same_time("eps=" + fmt(eps) + ", step=" + std::to_string(cp.step), cp.time,
                        ref.checkpoints[i].time);
        const ErrorNorms e = h1_error(*cp.field, *ref.checkpoints[i].field);
        running = std::max(running, e.h1);
        ErrorRecord rec;
        rec.step = cp.step;
        rec.time = cp.time;
        rec.l2_error = e.l2;
        rec.h1_error = e.h1;
        rec.running_max = running;
        rec.mass_drift = std::abs(cp.observables.mass - first.mass) / first.mass;
        rec.energy_drift = std::abs(cp.observables.discrete_energy - first.discrete_energy);
        s.records.push_back(rec);
      }
    });
  });

  ConvergenceTable& t = result.summary;
  t = make_table(config, "long-time e_max(T/eps^2)", step_name(config), {tau});
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& s = result.series[r];
    t.errors[r][0] = s.records.back().running_max;
    check_reference_validity("eps=" + fmt(rows[r]), s.records.back().h1_error, estimates[r]);
    t.metadata.emplace_back("realized_final_time[eps=" + fmt(rows[r]) + "]",
                            fmt(s.realized_final_time));
    t.metadata.emplace_back("reference_error_estimate[eps=" + fmt(rows[r]) + "]",
                            fmt(estimates[r]));
  }
  t.compute_orders();
  return result;
}

ConvergenceTable energy_drift_study(const StudyConfig& config, int threads) {
  ConvergenceTable table = make_table(config, "max |E_h^n - E_h^0| up to T/eps^2",
                                      step_name(config), sorted_desc(config.steps));
  const auto& rows = table.row_values;
  const auto& cols = table.column_values;
  parallel_for(rows.size() * cols.size(), threads, [&](std::size_t job) {
    const std::size_t r = job / cols.size();
    const std::size_t c = job % cols.size();
    in_cell("eps=" + fmt(rows[r]) + ", " + step_name(config) + "=" + fmt(cols[c]), [&] {
      const Grid grid = config.grid(config.modes.front());
      const SchemeSpec scheme = SchemeSpec::make(config.scheme, cols[c], config.horizon_for(rows[r]));
      EvolveOptions opts;
      opts.stride = config.stride;
      const Trajectory t = evolve(initial_data(config.data, grid), scheme, config.params(rows[r]), opts);
      const double e0 = t.checkpoints.front().observables.discrete_energy;
      double worst = 0.0;
      for (const auto& cp : t.checkpoints) {
        worst = std::max(worst, std::abs(cp.observables.discrete_energy - e0));
      }
      table.errors[r][c] = worst;
    });
  });
  table.compute_orders();
  return table;
}

RunResult run_single(const StudyConfig& config) {
  const double eps = config.eps.front();
  const Grid grid = config.grid(config.modes.front());
  const SchemeSpec scheme =
      SchemeSpec::make(config.scheme, config.steps.front(), config.horizon_for(eps));
  EvolveOptions opts;
  opts.stride = config.stride;
  const Trajectory t = evolve(initial_data(config.data, grid), scheme, config.params(eps), opts);
  RunResult out;
  out.realized_final_time = scheme.realized_final_time();
  out.checkpoints = t.checkpoints;
  const EnergyReport& first = t.checkpoints.front().observables;
  for (const auto& cp : t.checkpoints) {
    ErrorRecord rec;
    rec.step = cp.step;
    rec.time = cp.time;
    rec.mass_drift = std::abs(cp.observables.mass - first.mass) / first.mass;
    rec.energy_drift = std::abs(cp.observables.discrete_energy - first.discrete_energy);
    out.records.push_back(rec);
  }
  return out;
}

}  // namespace nlde
