#include "nlde/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "nlde/fft.hpp"
#include "nlde/mode_symbol.hpp"
#include "nlde/simd/kernels.hpp"

namespace nlde {

namespace {

void to_fourier_in_place(SpinorField& f) {
  const auto extents = f.grid().modes();
  const double scale = 1.0 / static_cast<double>(f.size());
  for (int c = 0; c < 2; ++c) {
    auto data = f.component(c);
    fft::forward(data, extents);
    for (auto& z : data) z *= scale;
  }
  f.set_representation(Representation::fourier);
}

void to_physical_in_place(SpinorField& f) {
  const auto extents = f.grid().modes();
  for (int c = 0; c < 2; ++c) fft::backward(f.component(c), extents);
  f.set_representation(Representation::physical);
}

}  // namespace

SpinorField analyze(const SpinorField& field) {
  SpinorField out = field;
  if (out.is_physical()) to_fourier_in_place(out);
  return out;
}

SpinorField synthesize(const SpinorField& field) {
  SpinorField out = field;
  if (!out.is_physical()) to_physical_in_place(out);
  return out;
}

SpinorField project(const SpinorField& field, std::array<int, 2> target_modes) {
  const Grid& fine = field.grid();
  if (fine.dim() == 1) target_modes[1] = 1;
  for (int axis = 0; axis < fine.dim(); ++axis) {
    const int mc = target_modes[axis];
    const int mf = fine.modes(axis);
    if (mc < 4 || mc % 2 != 0 || mf % mc != 0) {
      throw std::invalid_argument("project: target M = " + std::to_string(mc) +
                                  " must be even, >= 4 and divide M = " + std::to_string(mf));
    }
  }
  const Grid coarse = fine.with_modes(target_modes);
  const SpinorField coeffs = analyze(field);
  SpinorField out(coarse, Representation::fourier);

  const int cx = coarse.modes(0);
  const int cy = coarse.modes(1);
  for (int kx = 0; kx < cx; ++kx) {
    const int lx = coarse.mode_number(0, kx);
    const int fx = fine.mode_slot(0, lx);
    for (int ky = 0; ky < cy; ++ky) {
      const int fy = fine.dim() == 2 ? fine.mode_slot(1, coarse.mode_number(1, ky)) : 0;
      out.set(static_cast<std::size_t>(kx) * cy + ky,
              coeffs.at(static_cast<std::size_t>(fx) * fine.modes(1) + fy));
    }
  }
  return field.is_physical() ? synthesize(out) : out;
}

std::vector<double> slot_wavenumbers(const Grid& grid, int axis) {
  const int mx = grid.modes(0);
  const int my = grid.modes(1);
  std::vector<double> mu(grid.size());
  for (int kx = 0; kx < mx; ++kx) {
    for (int ky = 0; ky < my; ++ky) {
      const int k = axis == 0 ? kx : ky;
      mu[static_cast<std::size_t>(kx) * my + ky] =
          (axis == 1 && grid.dim() == 1) ? 0.0 : grid.wavenumber(axis, grid.mode_number(axis, k));
    }
  }
  return mu;
}

double sobolev_norm(const SpinorField& field, int m) {
  if (m < 0) throw std::invalid_argument("sobolev_norm: order must be nonnegative");
  const SpinorField coeffs = analyze(field);
  const Grid& grid = field.grid();
  const auto mu_x = slot_wavenumbers(grid, 0);
  const auto mu_y = slot_wavenumbers(grid, 1);
  std::vector<double> weight(grid.size());
  for (std::size_t k = 0; k < weight.size(); ++k) {
    weight[k] = std::pow(1.0 + mu_x[k] * mu_x[k] + mu_y[k] * mu_y[k], m);
  }
  const auto& kern = simd::active_kernels();
  double total = 0.0;
  for (int c = 0; c < 2; ++c) {
    total += kern.weighted_sum_abs2(coeffs.component(c).data(), weight.data(), weight.size());
  }
  return std::sqrt(total);
}

SpinorField spectral_derivative(const SpinorField& field, int axis) {
  if (axis < 0 || axis >= field.grid().dim()) {
    throw std::invalid_argument("spectral_derivative: axis out of range");
  }
  SpinorField coeffs = analyze(field);
  const auto mu = slot_wavenumbers(field.grid(), axis);
  std::vector<cplx> factor(mu.size());
  for (std::size_t k = 0; k < mu.size(); ++k) factor[k] = cplx(0.0, mu[k]);
  const auto& kern = simd::active_kernels();
  for (int c = 0; c < 2; ++c) kern.multiply(coeffs.component(c).data(), factor.data(), factor.size());
  return field.is_physical() ? synthesize(coeffs) : coeffs;
}

double discrete_h1_norm(const SpinorField& field) {
  const SpinorField nodes = synthesize(field);
  const auto& kern = simd::active_kernels();
  auto sum = [&kern](const SpinorField& f) {
    return kern.sum_abs2(f.component(0).data(), f.size()) +
           kern.sum_abs2(f.component(1).data(), f.size());
  };
  double total = sum(nodes);
  for (int axis = 0; axis < nodes.grid().dim(); ++axis) {
    total += sum(spectral_derivative(nodes, axis));
  }
  return std::sqrt(nodes.grid().cell_volume() * total);
}

FreePropagator::FreePropagator(const Grid& grid, double t) : grid_(grid), time_(t) {
  const std::size_t n = grid.size();
  m00_.resize(n);
  m01_.resize(n);
  m10_.resize(n);
  m11_.resize(n);
  const int mx = grid.modes(0);
  const int my = grid.modes(1);
  for (int kx = 0; kx < mx; ++kx) {
    for (int ky = 0; ky < my; ++ky) {
      const ModeSymbol s = grid.dim() == 1
                               ? mode_symbol(grid, grid.mode_number(0, kx))
                               : mode_symbol(grid, grid.mode_number(0, kx), grid.mode_number(1, ky));
      const Mat2 p = s.propagator(t);
      const std::size_t k = static_cast<std::size_t>(kx) * my + ky;
      m00_[k] = p(0, 0);
      m01_[k] = p(0, 1);
      m10_[k] = p(1, 0);
      m11_[k] = p(1, 1);
    }
  }
  const double scale = 1.0 / static_cast<double>(n);
  auto scaled = [scale](const std::vector<cplx>& v) {
    std::vector<cplx> out(v);
    for (auto& z : out) z *= scale;
    return out;
  };
  s00_ = scaled(m00_);
  s01_ = scaled(m01_);
  s10_ = scaled(m10_);
  s11_ = scaled(m11_);
}

void FreePropagator::apply(SpinorField& field) const {
  if (!(field.grid() == grid_)) throw std::invalid_argument("free flow: grid mismatch");
  const auto& kern = simd::active_kernels();
  auto u = field.component(0);
  auto v = field.component(1);
  if (field.is_physical()) {
    const auto extents = grid_.modes();
    fft::forward(u, extents);
    fft::forward(v, extents);
    kern.apply_mode_matrices(s00_.data(), s01_.data(), s10_.data(), s11_.data(), u.data(),
                             v.data(), u.size());
    fft::backward(u, extents);
    fft::backward(v, extents);
  } else {
    kern.apply_mode_matrices(m00_.data(), m01_.data(), m10_.data(), m11_.data(), u.data(),
                             v.data(), u.size());
  }
}

SpinorField free_flow(const SpinorField& field, double t) {
  SpinorField out = field;
  FreePropagator(field.grid(), t).apply(out);
  return out;
}

}  // namespace nlde
