#include "nlde/integrators.hpp"

#include <cmath>
#include <string>

namespace nlde {

namespace {

// Free-flow time and nonlinear duration for one step of size `step`.
struct SubflowScales {
  double free_time;
  double nonlinear_duration;
};

SubflowScales scales(double step, const ModelParams& params) {
  params.validate();
  const double eps2 = params.epsilon * params.epsilon;
  if (params.regime == Regime::oscillatory) {
    if (eps2 == 0.0) throw std::invalid_argument("oscillatory regime needs epsilon > 0");
    return {step / eps2, step};
  }
  return {step, eps2 * step};
}

}  // namespace

const char* to_string(SchemeKind kind) { return kind == SchemeKind::lie ? "lie" : "strang"; }

SchemeSpec SchemeSpec::make(SchemeKind kind, double step, double horizon) {
  if (!(std::isfinite(step) && step > 0.0)) {
    throw std::invalid_argument("scheme: time step must be positive and finite");
  }
  if (!(std::isfinite(horizon) && horizon >= 0.0)) {
    throw std::invalid_argument("scheme: horizon must be nonnegative and finite");
  }
  SchemeSpec s;
  s.kind = kind;
  s.step = step;
  s.horizon = horizon;
  s.step_count = std::lround(horizon / step);
  return s;
}

Stepper::Stepper(const Grid& grid, SchemeKind kind, double step, const ModelParams& params)
    : kind_(kind),
      step_(step),
      params_(params),
      nonlinear_duration_(scales(step, params).nonlinear_duration),
      half_(grid, 0.5 * scales(step, params).free_time),
      full_(grid, scales(step, params).free_time) {}

void Stepper::advance(SpinorField& field) const {
  if (!field.is_physical()) throw std::invalid_argument("stepper: needs node values");
  if (kind_ == SchemeKind::strang) {
    half_.apply(field);
    nonlinear_flow_in_place(field, nonlinear_duration_, params_);
    half_.apply(field);
  } else {
    full_.apply(field);
    nonlinear_flow_in_place(field, nonlinear_duration_, params_);
  }
}

SpinorField strang_step(const SpinorField& field, double tau, const ModelParams& params) {
  SpinorField out = synthesize(field);
  Stepper(field.grid(), SchemeKind::strang, tau, params).advance(out);
  return out;
}

SpinorField lie_step(const SpinorField& field, double tau, const ModelParams& params) {
  SpinorField out = synthesize(field);
  Stepper(field.grid(), SchemeKind::lie, tau, params).advance(out);
  return out;
}

NonFiniteError::NonFiniteError(long step)
    : std::runtime_error("evolve: non-finite value after step " + std::to_string(step)),
      step_(step) {}

Trajectory evolve(const SpinorField& initial, const SchemeSpec& scheme, const ModelParams& params,
                  const EvolveOptions& options) {
  if (options.stride < 1) throw std::invalid_argument("evolve: stride must be >= 1");
  const Stepper stepper(initial.grid(), scheme.kind, scheme.step, params);
  SpinorField state = synthesize(initial);

  Trajectory traj{{}, options.stride, state};
  auto record = [&](long n) {
    Checkpoint cp;
    cp.step = n;
    cp.time = static_cast<double>(n) * scheme.step;
    if (options.record_observables) cp.observables = discrete_energy(state, params);
    if (options.keep_fields) cp.field = state;
    traj.checkpoints.push_back(std::move(cp));
  };
  record(0);

  for (long n = 1; n <= scheme.step_count; ++n) {
    stepper.advance(state);
    if (!state.all_finite()) throw NonFiniteError(n);
    if (n % options.stride == 0 || n == scheme.step_count) record(n);
  }
  traj.final_field = std::move(state);
  return traj;
}

double reverse_check(const SpinorField& initial, const SchemeSpec& scheme,
                     const ModelParams& params, long steps) {
  if (scheme.kind != SchemeKind::strang) {
    throw std::invalid_argument("reverse_check: only the symmetric Strang scheme is reversible");
  }
  const SpinorField start = synthesize(initial);
  SpinorField state = start;
  const Stepper forward(start.grid(), SchemeKind::strang, scheme.step, params);
  const Stepper backward(start.grid(), SchemeKind::strang, -scheme.step, params);
  for (long n = 0; n < steps; ++n) forward.advance(state);
  for (long n = 0; n < steps; ++n) backward.advance(state);
  return discrete_h1_norm(state - start);
}

}  // namespace nlde
