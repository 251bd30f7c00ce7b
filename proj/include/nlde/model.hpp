#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nlde/spinor_field.hpp"

namespace nlde {

/// long_time: i d_t Phi = T Phi + eps^2 F(Phi) Phi, integrated to T / eps^2.
/// oscillatory: the time-rescaled form i d_s Phi = T Phi / eps^2 + F(Phi) Phi.
enum class Regime { long_time, oscillatory };

struct ModelParams {
  double epsilon = 1.0;
  double lambda1 = 0.0;  // coefficient of (Phi^* sigma3 Phi) sigma3
  double lambda2 = 1.0;  // coefficient of |Phi|^2 I
  Regime regime = Regime::long_time;

  /// Throws std::invalid_argument unless 0 <= epsilon <= 1 and the lambdas
  /// are finite. epsilon = 0 is the linear free-Dirac limit.
  void validate() const;
};

/// Per-node phase rates Lambda_{+-} = l2 |Phi|^2 +- l1 Phi^* sigma3 Phi.
struct NonlinearPhase {
  std::vector<double> plus;
  std::vector<double> minus;
};

NonlinearPhase nonlinear_phase(const SpinorField& field, const ModelParams& params);

/// Exact flow of i d_t Phi = F(Phi) Phi for `duration` (the caller scales by
/// eps^2 in the long-time regime). Both quadratic forms entering Lambda are
/// invariant under the diagonal rotation.
SpinorField nonlinear_flow(const SpinorField& field, double duration, const ModelParams& params);
void nonlinear_flow_in_place(SpinorField& field, double duration, const ModelParams& params);

/// h sum_j |Phi_j|^2 (rectangle rule; product of spacings in 2D).
double mass(const SpinorField& field);

/// G(Phi) = (l1/2)(Phi^* sigma3 Phi)^2 + (l2/2)|Phi|^4.
double interaction_density(const Spinor& value, const ModelParams& params);

struct EnergyReport {
  double mass = 0.0;
  /// E_h = kinetic + mass_term + eps^2 * nonlinear.
  double discrete_energy = 0.0;
  /// The continuous functional under the same spectral quadrature; on the
  /// periodic grid this is the same number as discrete_energy.
  double energy = 0.0;
  double kinetic = 0.0;    // h sum -i Phi^* (sigma1 d_x + sigma2 d_y) Phi
  double mass_term = 0.0;  // h sum Phi^* sigma3 Phi
  double nonlinear = 0.0;  // h sum G(Phi), before the eps^2 factor
  double imaginary_residue = 0.0;
  /// Set when |imaginary residue| exceeds 1e-10 relative: a corrupted field.
  bool flagged = false;
};

EnergyReport discrete_energy(const SpinorField& field, const ModelParams& params);

/// Initial-data catalog: "accuracy-1d", "irrational-2d", "oscillatory-1d".
std::vector<std::string> catalog_keys();

/// The grid bounds a catalog entry is defined on, with the requested modes.
Grid catalog_grid(std::string_view key, std::array<int, 2> modes);

/// Throws std::invalid_argument for unknown keys or a grid whose bounds
/// differ from the entry's domain.
SpinorField initial_data(std::string_view key, const Grid& grid);

}  // namespace nlde
