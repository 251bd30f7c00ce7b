#pragma once

#include <array>
#include <vector>

#include "nlde/spinor_field.hpp"

namespace nlde {

/// Discrete Fourier analysis: u~_l = (1/M) sum_j U_j exp(-2 pi i j l / M),
/// l in T_M (tensorized in 2D). Fourier input is returned unchanged.
SpinorField analyze(const SpinorField& field);

/// Node values U_j = sum_l u~_l exp(i mu_l (x_j - a)). Physical input is
/// returned unchanged.
SpinorField synthesize(const SpinorField& field);

/// Keeps the coefficients with l in T_{M_c} per axis and drops the rest.
/// Each target count must be even, >= 4 and divide the source count; the
/// result lives on the coarse grid in the input's representation.
SpinorField project(const SpinorField& field, std::array<int, 2> target_modes);

/// sqrt(sum_{l in T_M} (1 + |mu_l|^2)^m |u~_l|^2), both components.
double sobolev_norm(const SpinorField& field, int m);

/// Multiplies each coefficient by i mu_l along `axis`; keeps the
/// input's representation.
SpinorField spectral_derivative(const SpinorField& field, int axis);

/// sqrt(h sum_j |U_j|^2 + h sum_j |U'_j|^2) with spectral derivatives,
/// summing the partial derivatives in 2D (h = product of spacings).
double discrete_h1_norm(const SpinorField& field);

/// Per-storage-slot wavenumbers along one axis of the flattened mode array.
std::vector<double> slot_wavenumbers(const Grid& grid, int axis);

/// Exact free Dirac flow exp(-i t T) on the discrete mode set, with the
/// per-mode matrices Q_l exp(-i t D_l) Q_l^* precomputed once.
class FreePropagator {
 public:
  FreePropagator(const Grid& grid, double t);

  const Grid& grid() const { return grid_; }
  double time() const { return time_; }

  /// In place on a field of either representation.
  void apply(SpinorField& field) const;

 private:
  Grid grid_;
  double time_;
  // Plain matrices for Fourier input; the *_scaled copies fold in the 1/M
  // of the analysis step for physical input.
  std::vector<cplx> m00_, m01_, m10_, m11_;
  std::vector<cplx> s00_, s01_, s10_, s11_;
};

/// exp(-i t T) applied to a copy; negative t runs the flow backwards.
SpinorField free_flow(const SpinorField& field, double t);

}  // namespace nlde
