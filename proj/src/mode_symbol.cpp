#include "nlde/mode_symbol.hpp"

#include <cmath>
#include <stdexcept>

namespace nlde {

namespace pauli {

Mat2 sigma1() {
  Mat2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Mat2 sigma2() {
  using c = std::complex<double>;
  Mat2 m;
  m << 0.0, c(0.0, -1.0), c(0.0, 1.0), 0.0;
  return m;
}

Mat2 sigma3() {
  Mat2 m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

}  // namespace pauli

namespace {

ModeSymbol build(std::array<int, 2> l, double mu_x, double mu_y) {
  using c = std::complex<double>;
  ModeSymbol s;
  s.l = l;
  s.mu = {mu_x, mu_y};
  s.delta = std::sqrt(1.0 + mu_x * mu_x + mu_y * mu_y);
  s.gamma = mu_x * pauli::sigma1() + mu_y * pauli::sigma2() + pauli::sigma3();

  const double norm = std::sqrt(2.0 * s.delta * (1.0 + s.delta));
  const double diag = (1.0 + s.delta) / norm;
  const c off(mu_x / norm, mu_y / norm);
  s.q << diag, -std::conj(off), off, diag;

  s.d << s.delta, 0.0, 0.0, -s.delta;

  const Eigen::Vector2cd plus = s.q.col(0);
  const Eigen::Vector2cd minus = s.q.col(1);
  s.pi_plus = plus * plus.adjoint();
  s.pi_minus = minus * minus.adjoint();
  return s;
}

}  // namespace

Mat2 ModeSymbol::propagator(double t) const {
  const std::complex<double> phase = std::polar(1.0, -t * delta);
  Eigen::Vector2cd diag(phase, std::conj(phase));
  return q * diag.asDiagonal() * q.adjoint();
}

ModeSymbol mode_symbol(const Grid& grid, int l) {
  if (grid.dim() != 1) throw std::invalid_argument("mode_symbol: 1D index on a 2D grid");
  if (!grid.contains_mode(0, l)) {
    throw std::out_of_range("mode_symbol: l = " + std::to_string(l) + " outside T_M");
  }
  return build({l, 0}, grid.wavenumber(0, l), 0.0);
}

ModeSymbol mode_symbol(const Grid& grid, int lx, int ly) {
  if (grid.dim() != 2) throw std::invalid_argument("mode_symbol: 2D index on a 1D grid");
  if (!grid.contains_mode(0, lx) || !grid.contains_mode(1, ly)) {
    throw std::out_of_range("mode_symbol: (" + std::to_string(lx) + ", " + std::to_string(ly) +
                            ") outside T_M");
  }
  return build({lx, ly}, grid.wavenumber(0, lx), grid.wavenumber(1, ly));
}

}  // namespace nlde
