#include "nlde/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nlde/simd/kernels.hpp"
#include "nlde/spectral.hpp"

namespace nlde {

void ModelParams::validate() const {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("model: epsilon must lie in [0, 1]");
  }
  if (!std::isfinite(lambda1) || !std::isfinite(lambda2)) {
    throw std::invalid_argument("model: lambda1 and lambda2 must be finite");
  }
}

NonlinearPhase nonlinear_phase(const SpinorField& field, const ModelParams& params) {
  if (!field.is_physical()) throw std::invalid_argument("nonlinear_phase: needs node values");
  NonlinearPhase out{std::vector<double>(field.size()), std::vector<double>(field.size())};
  simd::active_kernels().phase_rates(field.component(0).data(), field.component(1).data(),
                                     params.lambda1, params.lambda2, out.plus.data(),
                                     out.minus.data(), field.size());
  return out;
}

void nonlinear_flow_in_place(SpinorField& field, double duration, const ModelParams& params) {
  if (!field.is_physical()) throw std::invalid_argument("nonlinear_flow: needs node values");
  simd::active_kernels().rotate_by_phase(field.component(0).data(), field.component(1).data(),
                                         params.lambda1, params.lambda2, duration, field.size());
}

SpinorField nonlinear_flow(const SpinorField& field, double duration, const ModelParams& params) {
  SpinorField out = field;
  nonlinear_flow_in_place(out, duration, params);
  return out;
}

double mass(const SpinorField& field) {
  const SpinorField nodes = synthesize(field);
  const auto& kern = simd::active_kernels();
  const double sum = kern.sum_abs2(nodes.component(0).data(), nodes.size()) +
                     kern.sum_abs2(nodes.component(1).data(), nodes.size());
  return field.grid().cell_volume() * sum;
}

double interaction_density(const Spinor& value, const ModelParams& params) {
  const double a = std::norm(value[0]);
  const double b = std::norm(value[1]);
  const double chiral = a - b;
  const double density = a + b;
  return 0.5 * params.lambda1 * chiral * chiral + 0.5 * params.lambda2 * density * density;
}

EnergyReport discrete_energy(const SpinorField& field, const ModelParams& params) {
  const SpinorField phi = synthesize(field);
  const Grid& grid = phi.grid();
  const SpinorField dx = spectral_derivative(phi, 0);

  // -i Phi^* sigma1 d_x Phi = -i (conj(u) v_x + conj(v) u_x)
  // -i Phi^* sigma2 d_y Phi = -i (-i conj(u) v_y + i conj(v) u_y) = -conj(u) v_y + conj(v) u_y
  cplx kinetic = 0.0;
  double mass_term = 0.0;
  double nonlinear = 0.0;
  for (std::size_t k = 0; k < phi.size(); ++k) {
    const Spinor p = phi.at(k);
    const Spinor d = dx.at(k);
    kinetic += cplx(0.0, -1.0) * (std::conj(p[0]) * d[1] + std::conj(p[1]) * d[0]);
    mass_term += std::norm(p[0]) - std::norm(p[1]);
    nonlinear += interaction_density(p, params);
  }
  if (grid.dim() == 2) {
    const SpinorField dy = spectral_derivative(phi, 1);
    for (std::size_t k = 0; k < phi.size(); ++k) {
      const Spinor p = phi.at(k);
      const Spinor d = dy.at(k);
      kinetic += -std::conj(p[0]) * d[1] + std::conj(p[1]) * d[0];
    }
  }

  const double h = grid.cell_volume();
  EnergyReport r;
  r.mass = mass(phi);
  r.kinetic = h * kinetic.real();
  r.mass_term = h * mass_term;
  r.nonlinear = h * nonlinear;
  const double eps2 = params.epsilon * params.epsilon;
  r.discrete_energy = r.kinetic + r.mass_term + eps2 * r.nonlinear;
  r.energy = r.discrete_energy;
  r.imaginary_residue = h * kinetic.imag();
  const double scale = std::abs(r.kinetic) + std::abs(r.mass_term) + eps2 * std::abs(r.nonlinear);
  r.flagged = std::abs(r.imaginary_residue) > 1e-10 * std::max(scale, 1.0);
  return r;
}

std::vector<std::string> catalog_keys() { return {"accuracy-1d", "irrational-2d", "oscillatory-1d"}; }

Grid catalog_grid(std::string_view key, std::array<int, 2> modes) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (key == "accuracy-1d") return Grid::line(0.0, two_pi, modes[0]);
  if (key == "oscillatory-1d") return Grid::line(0.0, 1.0, modes[0]);
  if (key == "irrational-2d") return Grid::rect({0.0, two_pi}, {0.0, 1.0}, modes[0], modes[1]);
  throw std::invalid_argument("initial data: unknown catalog key '" + std::string(key) + "'");
}

SpinorField initial_data(std::string_view key, const Grid& grid) {
  const Grid expected = catalog_grid(key, grid.modes());
  if (expected.dim() != grid.dim()) {
    throw std::invalid_argument("initial data: '" + std::string(key) + "' has dimension " +
                                std::to_string(expected.dim()));
  }
  for (int axis = 0; axis < grid.dim(); ++axis) {
    const Interval a = expected.bounds(axis);
    const Interval b = grid.bounds(axis);
    if (std::abs(a.lo - b.lo) > 1e-12 || std::abs(a.hi - b.hi) > 1e-12) {
      throw std::invalid_argument("initial data: '" + std::string(key) +
                                  "' is defined on " + expected.describe() + ", got " +
                                  grid.describe());
    }
  }

  if (key == "accuracy-1d") {
    return SpinorField::sample(grid, [](double x, double) -> Spinor {
      const double s2 = std::sin(x) * std::sin(x);
      return {2.0 / (2.0 + s2), 2.0 / (1.0 + s2)};
    });
  }
  if (key == "oscillatory-1d") {
    return SpinorField::sample(grid, [](double x, double) -> Spinor {
      const double bump = 4.0 * std::pow(x, 4) * std::pow(1.0 - x, 4);
      return {bump + 2.0, bump};
    });
  }
  // irrational-2d
  return SpinorField::sample(grid, [](double x, double y) -> Spinor {
    constexpr double pi = std::numbers::pi;
    const double c2 = std::cos(2.0 * x) * std::cos(2.0 * x);
    return {std::sin(2.0 * x) + std::sin(2.0 * pi * y), 1.0 / (1.0 + c2) + std::cos(2.0 * pi * y)};
  });
}

}  // namespace nlde
