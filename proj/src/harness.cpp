#include "nlde/harness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nlde/simd/kernels.hpp"

namespace nlde {

const char* to_string(StudyKind kind) {
  switch (kind) {
    case StudyKind::run: return "run";
    case StudyKind::temporal: return "temporal";
    case StudyKind::spatial: return "spatial";
    case StudyKind::long_time: return "long-time";
    case StudyKind::oscillatory_table: return "oscillatory-table";
    case StudyKind::energy_drift: return "energy-drift";
  }
  return "?";
}

std::optional<StudyKind> parse_study_kind(std::string_view name) {
  for (auto k : {StudyKind::run, StudyKind::temporal, StudyKind::spatial, StudyKind::long_time,
                 StudyKind::oscillatory_table, StudyKind::energy_drift}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

int StudyConfig::dim() const { return catalog_grid(data, {8, 8}).dim(); }

Grid StudyConfig::grid(std::array<int, 2> m) const {
  const Grid base = catalog_grid(data, m);
  if (domain.empty()) return base;
  if (base.dim() == 1) return Grid::line(domain[0].lo, domain[0].hi, m[0]);
  return Grid::rect(domain[0], domain[1], m[0], m[1]);
}

ModelParams StudyConfig::params(double epsilon) const {
  ModelParams p;
  p.epsilon = epsilon;
  p.lambda1 = lambda1;
  p.lambda2 = lambda2;
  p.regime = oscillatory ? Regime::oscillatory : Regime::long_time;
  return p;
}

double StudyConfig::horizon_for(double epsilon) const {
  return oscillatory ? horizon : horizon / (epsilon * epsilon);
}

namespace {

double sum_abs2(const SpinorField& f) {
  const auto& kern = simd::active_kernels();
  return kern.sum_abs2(f.component(0).data(), f.size()) +
         kern.sum_abs2(f.component(1).data(), f.size());
}

bool is_integer_multiple(double value, double unit) {
  const double r = value / unit;
  return std::abs(r - std::round(r)) <= 1e-9 * std::max(1.0, r) && std::round(r) >= 1.0;
}

std::string format_value(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

ErrorNorms h1_error(const SpinorField& numeric, const SpinorField& reference) {
  const Grid& ga = numeric.grid();
  const Grid& gb = reference.grid();
  if (ga.dim() != gb.dim()) throw std::invalid_argument("h1_error: dimension mismatch");
  std::array<int, 2> common{1, 1};
  for (int axis = 0; axis < ga.dim(); ++axis) {
    if (!(ga.bounds(axis) == gb.bounds(axis))) {
      throw std::invalid_argument("h1_error: fields live on different boxes");
    }
    const int ma = ga.modes(axis);
    const int mb = gb.modes(axis);
    if (ma % mb != 0 && mb % ma != 0) {
      throw std::invalid_argument("h1_error: grid mismatch, M = " + std::to_string(ma) +
                                  " and " + std::to_string(mb) + " do not divide");
    }
    common[axis] = std::min(ma, mb);
  }

  auto restricted = [&common](const SpinorField& f) { return project(synthesize(f), common); };
  const SpinorField diff = restricted(numeric) - restricted(reference);
  const double h = diff.grid().cell_volume();
  const double l2sq = h * sum_abs2(diff);
  double dsq = 0.0;
  for (int axis = 0; axis < ga.dim(); ++axis) {
    const SpinorField dd = restricted(spectral_derivative(synthesize(numeric), axis)) -
                           restricted(spectral_derivative(synthesize(reference), axis));
    dsq += h * sum_abs2(dd);
  }
  return {std::sqrt(l2sq), std::sqrt(l2sq + dsq)};
}

ReferencePlan plan_reference(const StudyConfig& config, [[maybe_unused]] double epsilon) {
  ReferencePlan plan;
  const double base = 1e-4;

  if (config.kind == StudyKind::spatial) {
    plan.step = config.step_ref.value_or(base);
  } else if (config.step_ref) {
    plan.step = *config.step_ref;
  } else {
    const double smallest = *std::min_element(config.steps.begin(), config.steps.end());
    const double divisions = std::max(16.0, std::ceil(smallest / base - 1e-9));
    plan.step = smallest / divisions;
  }
  if (!(plan.step > 0.0 && std::isfinite(plan.step))) {
    throw std::invalid_argument("reference: step must be positive");
  }
  if (config.kind != StudyKind::spatial) {
    for (double s : config.steps) {
      if (!is_integer_multiple(s, plan.step)) {
        throw std::invalid_argument("reference: study step " + format_value(s) +
                                    " is not an integer multiple of the reference step " +
                                    format_value(plan.step));
      }
    }
  }

  const int dim = config.dim();
  if (config.modes_ref) {
    plan.modes = *config.modes_ref;
  } else if (config.kind == StudyKind::spatial) {
    for (int axis = 0; axis < dim; ++axis) {
      int m = 128;
      auto fits = [&](int cand) {
        return std::all_of(config.modes.begin(), config.modes.end(),
                           [&](const auto& mm) { return cand % mm[axis] == 0 && cand > mm[axis]; });
      };
      while (!fits(m)) m *= 2;
      plan.modes[axis] = m;
    }
  } else {
    for (int axis = 0; axis < dim; ++axis) {
      int m = 0;
      for (const auto& mm : config.modes) m = std::max(m, mm[axis]);
      plan.modes[axis] = m;
    }
  }
  if (dim == 1) plan.modes[1] = 1;
  for (const auto& mm : config.modes) {
    for (int axis = 0; axis < dim; ++axis) {
      if (plan.modes[axis] % mm[axis] != 0) {
        throw std::invalid_argument("reference: study grid M = " + std::to_string(mm[axis]) +
                                    " does not divide the reference grid M_ref = " +
                                    std::to_string(plan.modes[axis]));
      }
    }
  }
  return plan;
}

Trajectory reference_solution(const StudyConfig& config, double epsilon,
                              double checkpoint_interval) {
  const ReferencePlan plan = plan_reference(config, epsilon);
  const Grid grid = config.grid(plan.modes);
  const SchemeSpec scheme =
      SchemeSpec::make(SchemeKind::strang, plan.step, config.horizon_for(epsilon));
  EvolveOptions opts;
  opts.keep_fields = true;
  opts.record_observables = false;
  if (checkpoint_interval > 0.0) {
    if (!is_integer_multiple(checkpoint_interval, plan.step)) {
      throw std::invalid_argument("reference: checkpoint interval " +
                                  format_value(checkpoint_interval) +
                                  " is not a multiple of the reference step");
    }
    opts.stride = std::lround(checkpoint_interval / plan.step);
  } else {
    opts.stride = std::max<long>(1, scheme.step_count);
  }
  return evolve(initial_data(config.data, grid), scheme, config.params(epsilon), opts);
}

double reference_error_estimate(const StudyConfig& config, double epsilon,
                                const SpinorField* reference) {
  const ReferencePlan plan = plan_reference(config, epsilon);
  const ModelParams params = config.params(epsilon);
  const double horizon = config.horizon_for(epsilon);
  auto final_state = [&](double step, std::array<int, 2> modes) {
    const Grid grid = config.grid(modes);
    EvolveOptions opts;
    opts.record_observables = false;
    const SchemeSpec scheme = SchemeSpec::make(SchemeKind::strang, step, horizon);
    opts.stride = std::max<long>(1, scheme.step_count);
    return evolve(initial_data(config.data, grid), scheme, params, opts).final_field;
  };
  const SpinorField base = reference ? *reference : final_state(plan.step, plan.modes);
  if (config.kind == StudyKind::spatial) {
    std::array<int, 2> doubled{plan.modes[0] * 2, config.dim() == 2 ? plan.modes[1] * 2 : 1};
    return h1_error(base, final_state(plan.step, doubled)).h1;
  }
  // e(s) ~ C s^2, so e(s) ~ (4/3) |u_s - u_{s/2}|.
  return 4.0 / 3.0 * h1_error(base, final_state(0.5 * plan.step, plan.modes)).h1;
}

double observed_order(double e_coarse, double e_fine, double ratio) {
  return std::log(e_coarse / e_fine) / std::log(ratio);
}

void ConvergenceTable::compute_orders() {
  const bool by_modes = column_axis == "M";
  orders.assign(errors.size(), std::vector<std::optional<double>>(column_values.size()));
  for (std::size_t r = 0; r < errors.size(); ++r) {
    for (std::size_t c = 1; c < column_values.size(); ++c) {
      const double a = errors[r][c - 1];
      const double b = errors[r][c];
      if (!(a > kRoundoffFloor && b > kRoundoffFloor)) continue;
      const double ratio = by_modes ? column_values[c] / column_values[c - 1]
                                    : column_values[c - 1] / column_values[c];
      orders[r][c] = observed_order(a, b, ratio);
    }
  }
}

std::vector<std::pair<std::string, std::string>> describe_config(const StudyConfig& config) {
  auto join = [](const auto& values, auto fmt) {
    std::string s = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) s += ", ";
      s += fmt(values[i]);
    }
    return s + "]";
  };
  auto num = [](double v) { return format_value(v); };
  auto modes = [&config](const std::array<int, 2>& m) {
    return config.dim() == 2 ? "[" + std::to_string(m[0]) + ", " + std::to_string(m[1]) + "]"
                             : std::to_string(m[0]);
  };
  const Grid g = config.grid(config.modes.front());
  std::string domain = "[" + num(g.bounds(0).lo) + ", " + num(g.bounds(0).hi) + "]";
  if (g.dim() == 2) {
    domain = "[" + domain + ", [" + num(g.bounds(1).lo) + ", " + num(g.bounds(1).hi) + "]]";
  }
  const char* step_name = config.oscillatory ? "kappa" : "tau";

  std::vector<std::pair<std::string, std::string>> md;
  md.emplace_back("artifact", "nlde 1.0.0");
  md.emplace_back("study", to_string(config.kind));
  md.emplace_back("data", config.data);
  md.emplace_back("domain", domain);
  md.emplace_back("regime", config.oscillatory ? "oscillatory" : "long-time");
  md.emplace_back("scheme", to_string(config.scheme));
  md.emplace_back("lambda1", num(config.lambda1));
  md.emplace_back("lambda2", num(config.lambda2));
  md.emplace_back("eps", join(config.eps, num));
  md.emplace_back("M", join(config.modes, modes));
  if (config.kind != StudyKind::spatial) md.emplace_back(step_name, join(config.steps, num));
  md.emplace_back("T", num(config.horizon));
  md.emplace_back("stride", std::to_string(config.stride));
  md.emplace_back(std::string(step_name) + "_ref",
                  config.step_ref ? num(*config.step_ref) : std::string("auto"));
  md.emplace_back("M_ref", config.modes_ref ? modes(*config.modes_ref) : std::string("auto"));
  md.emplace_back("kernels", simd::active_kernels().name);
  return md;
}

}  // namespace nlde
