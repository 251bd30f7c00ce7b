#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "nlde/integrators.hpp"
#include "nlde/mode_symbol.hpp"
#include "nlde/run_study.hpp"
#include "nlde/simd/kernels.hpp"
#include "nlde/spectral.hpp"

namespace nlde {

namespace {

struct Check {
  const char* name;
  double tolerance;
  std::function<double()> measure;
};

SpinorField smooth_sample(const Grid& grid) {
  return SpinorField::sample(grid, [](double x, double) -> Spinor {
    const double t = 2.0 * std::numbers::pi * x;
    return {cplx(std::cos(t), 0.3 * std::sin(2 * t)), cplx(0.5 * std::sin(t), std::cos(3 * t))};
  });
}

double direct_dft_mismatch() {
  const Grid grid = Grid::line(0.0, 1.0, 8);
  const SpinorField f = smooth_sample(grid);
  const SpinorField fc = analyze(f);
  double worst = 0.0;
  for (int l = -4; l < 4; ++l) {
    for (int c = 0; c < 2; ++c) {
      cplx sum = 0.0;
      for (int j = 0; j < 8; ++j) {
        sum += f.component(c)[j] * std::polar(1.0, -2.0 * std::numbers::pi * j * l / 8.0);
      }
      worst = std::max(worst, std::abs(sum / 8.0 - fc.coefficient(l)[c]));
    }
  }
  return worst;
}

double symbol_defect() {
  const Grid grid = Grid::line(0.0, 2.0 * std::numbers::pi, 16);
  double worst = 0.0;
  for (int l = -8; l < 8; ++l) {
    const ModeSymbol s = mode_symbol(grid, l);
    const Mat2 id = Mat2::Identity();
    worst = std::max(worst, (s.q * s.q.adjoint() - id).norm());
    worst = std::max(worst, (s.q * s.d * s.q.adjoint() - s.gamma).norm());
    worst = std::max(worst, (s.pi_plus * s.pi_plus - s.pi_plus).norm());
    worst = std::max(worst, (s.pi_plus * s.pi_minus).norm());
    worst = std::max(worst, (s.pi_plus + s.pi_minus - id).norm());
  }
  return worst;
}

double round_trip_defect() {
  const SpinorField f = smooth_sample(Grid::line(0.0, 1.0, 32));
  return max_abs_difference(synthesize(analyze(f)), f);
}

ModelParams seed_params() {
  ModelParams p;
  p.epsilon = 0.5;
  return p;
}

double mass_drift() {
  const SpinorField f = smooth_sample(Grid::line(0.0, 1.0, 64));
  const Trajectory t = evolve(f, SchemeSpec::make(SchemeKind::strang, 0.01, 2.0), seed_params());
  double worst = 0.0;
  const double m0 = t.checkpoints.front().observables.mass;
  for (const auto& cp : t.checkpoints) worst = std::max(worst, std::abs(cp.observables.mass - m0) / m0);
  return worst;
}

double reversibility() {
  const SpinorField f = smooth_sample(Grid::line(0.0, 1.0, 64));
  return reverse_check(f, SchemeSpec::make(SchemeKind::strang, 0.01, 1.0), seed_params(), 100);
}

double kernel_mismatch() {
  const simd::KernelTable* fast = simd::avx2_kernels();
  if (fast == nullptr || !simd::cpu_supports_avx2()) return 0.0;
  const simd::KernelTable& ref = simd::scalar_kernels();
  const std::size_t n = 37;
  std::vector<cplx> u(n), v(n);
  for (std::size_t k = 0; k < n; ++k) {
    u[k] = cplx(std::sin(0.3 * k), std::cos(0.7 * k));
    v[k] = cplx(std::cos(1.1 * k), 0.2 * std::sin(k));
  }
  auto u1 = u, v1 = v, u2 = u, v2 = v;
  ref.rotate_by_phase(u1.data(), v1.data(), -1.0, 1.0, 0.37, n);
  fast->rotate_by_phase(u2.data(), v2.data(), -1.0, 1.0, 0.37, n);
  ref.apply_mode_matrices(u.data(), v.data(), v.data(), u.data(), u1.data(), v1.data(), n);
  fast->apply_mode_matrices(u.data(), v.data(), v.data(), u.data(), u2.data(), v2.data(), n);
  double worst = std::abs(ref.sum_abs2(u.data(), n) - fast->sum_abs2(u.data(), n));
  for (std::size_t k = 0; k < n; ++k) {
    worst = std::max({worst, std::abs(u1[k] - u2[k]), std::abs(v1[k] - v2[k])});
  }
  return worst;
}

}  // namespace

bool run_seed_check(std::ostream& log) {
  const std::vector<Check> checks = {
      {"transform matches direct summation (M=8)", 1e-14, direct_dft_mismatch},
      {"mode symbol unitary, diagonalized, projectors", 1e-13, symbol_defect},
      {"analyze/synthesize round trip", 1e-13, round_trip_defect},
      {"Strang mass drift (200 steps)", 1e-12, mass_drift},
      {"Strang reversibility (100 steps)", 1e-11, reversibility},
      {"scalar and vector kernels agree", 1e-12, kernel_mismatch},
  };
  bool ok = true;
  for (const auto& c : checks) {
    const double value = c.measure();
    const bool pass = value <= c.tolerance;
    ok = ok && pass;
    log << (pass ? "PASS " : "FAIL ") << c.name << ": " << value << " (tol " << c.tolerance << ")\n";
  }
  log << "kernels: " << simd::active_kernels().name << "\n";
  return ok;
}

}  // namespace nlde
