#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "nlde/model.hpp"
#include "nlde/spectral.hpp"

namespace nlde {

enum class SchemeKind { lie, strang };

const char* to_string(SchemeKind kind);

/// Time step, horizon and the realized step count. The step is tau in the
/// long-time regime and kappa in the oscillatory regime.
struct SchemeSpec {
  SchemeKind kind = SchemeKind::strang;
  double step = 0.01;
  double horizon = 0.0;
  long step_count = 0;

  /// step_count = round(horizon / step); throws unless step > 0 and
  /// horizon >= 0 are finite.
  static SchemeSpec make(SchemeKind kind, double step, double horizon);

  double realized_final_time() const { return static_cast<double>(step_count) * step; }
};

/// One step of the free-nonlinear-free Strang composition
///   free(tau/2) -> nonlinear(d) -> free(tau/2)
/// with d = eps^2 tau (long-time) or the free flow scaled by 1/eps^2 and
/// d = kappa (oscillatory). tau may be negative.
SpinorField strang_step(const SpinorField& field, double tau, const ModelParams& params);

/// First-order Lie-Trotter step: nonlinear(d) after free(tau).
SpinorField lie_step(const SpinorField& field, double tau, const ModelParams& params);

/// Repeated stepping with the propagators built once for a fixed step.
class Stepper {
 public:
  Stepper(const Grid& grid, SchemeKind kind, double step, const ModelParams& params);

  /// Advances a physical-space field by one step in place.
  void advance(SpinorField& field) const;

  double step() const { return step_; }

 private:
  SchemeKind kind_;
  double step_;
  ModelParams params_;
  double nonlinear_duration_;
  FreePropagator half_;
  FreePropagator full_;
};

/// Raised by evolve when a step produces NaN or infinity.
class NonFiniteError : public std::runtime_error {
 public:
  explicit NonFiniteError(long step);
  long step() const { return step_; }

 private:
  long step_;
};

struct Checkpoint {
  long step = 0;
  double time = 0.0;
  EnergyReport observables;
  std::optional<SpinorField> field;
};

struct Trajectory {
  std::vector<Checkpoint> checkpoints;
  long stride = 1;
  SpinorField final_field;
};

struct EvolveOptions {
  long stride = 10;
  bool keep_fields = false;
  bool record_observables = true;
};

/// Applies scheme.step_count steps, checkpointing the initial state, every
/// `stride` steps and the final step.
Trajectory evolve(const SpinorField& initial, const SchemeSpec& scheme, const ModelParams& params,
                  const EvolveOptions& options = {});

/// n Strang steps with +step, then n with -step; discrete H1 distance to
/// the start.
double reverse_check(const SpinorField& initial, const SchemeSpec& scheme,
                     const ModelParams& params, long steps);

}  // namespace nlde
