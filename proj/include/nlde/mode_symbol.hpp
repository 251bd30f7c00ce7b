#pragma once

#include <Eigen/Dense>

#include <array>

#include "nlde/grid.hpp"

namespace nlde {

using Mat2 = Eigen::Matrix2cd;

namespace pauli {
Mat2 sigma1();
Mat2 sigma2();
Mat2 sigma3();
}  // namespace pauli

/// Free-Dirac symbol of one Fourier mode and its exact diagonalization
/// Gamma = Q D Q^*, D = diag(delta, -delta), delta = sqrt(1 + |mu|^2).
///
/// In 2D Gamma = mu_x sigma1 + mu_y sigma2 + sigma3 and Q has the columns
/// (1 + delta, mu_x + i mu_y) / N and (-(mu_x - i mu_y), 1 + delta) / N with
/// N = sqrt(2 delta (1 + delta)). This is the 1D closed form when mu_y = 0
/// and tends to the identity as mu -> 0, so no eigen-solver branch is hit.
struct ModeSymbol {
  std::array<int, 2> l{0, 0};
  std::array<double, 2> mu{0.0, 0.0};
  double delta = 1.0;
  Mat2 gamma;
  Mat2 q;
  Mat2 d;
  Mat2 pi_plus;
  Mat2 pi_minus;

  /// exp(-i t Gamma) = Q exp(-i t D) Q^*.
  Mat2 propagator(double t) const;
};

/// Throws std::out_of_range if l is outside T_M.
ModeSymbol mode_symbol(const Grid& grid, int l);
ModeSymbol mode_symbol(const Grid& grid, int lx, int ly);

}  // namespace nlde
