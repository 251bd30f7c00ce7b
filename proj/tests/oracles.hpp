#pragma once
// Independent reference computations for the tests. Nothing here calls
// the transform, propagator or derivative code under test.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "nlde/integrators.hpp"
#include "nlde/spinor_field.hpp"

namespace oracle {

using nlde::cplx;
using nlde::Grid;
using nlde::Spinor;
using nlde::SpinorField;

inline constexpr double pi = std::numbers::pi;

/// u~_l = (1/M) sum_j U_j exp(-2 pi i j l / M) by direct summation, tensorized
/// in 2D. Returns coefficients in FFT slot order.
inline SpinorField direct_analyze(const SpinorField& f) {
  const Grid& g = f.grid();
  const int mx = g.modes(0);
  const int my = g.modes(1);
  std::vector<cplx> up(g.size()), lo(g.size());
  for (int sx = 0; sx < mx; ++sx) {
    for (int sy = 0; sy < my; ++sy) {
      const int lx = g.mode_number(0, sx);
      const int ly = my > 1 ? g.mode_number(1, sy) : 0;
      cplx a = 0.0, b = 0.0;
      for (int jx = 0; jx < mx; ++jx) {
        for (int jy = 0; jy < my; ++jy) {
          const double phase = -2.0 * pi * (double(jx) * lx / mx + double(jy) * ly / my);
          const cplx w = std::polar(1.0, phase);
          const std::size_t k = std::size_t(jx) * my + jy;
          a += f.component(0)[k] * w;
          b += f.component(1)[k] * w;
        }
      }
      const std::size_t s = std::size_t(sx) * my + sy;
      up[s] = a / double(mx * my);
      lo[s] = b / double(mx * my);
    }
  }
  return SpinorField(g, nlde::Representation::fourier, std::move(up), std::move(lo));
}

/// U_j = sum_l u~_l exp(i mu_l (x_j - a)) by direct summation.
inline SpinorField direct_synthesize(const SpinorField& c) {
  const Grid& g = c.grid();
  const int mx = g.modes(0);
  const int my = g.modes(1);
  std::vector<cplx> up(g.size()), lo(g.size());
  for (int jx = 0; jx < mx; ++jx) {
    for (int jy = 0; jy < my; ++jy) {
      cplx a = 0.0, b = 0.0;
      for (int sx = 0; sx < mx; ++sx) {
        for (int sy = 0; sy < my; ++sy) {
          const int lx = g.mode_number(0, sx);
          const int ly = my > 1 ? g.mode_number(1, sy) : 0;
          double phase = g.wavenumber(0, lx) * (g.node(0, jx) - g.bounds(0).lo);
          if (my > 1) phase += g.wavenumber(1, ly) * (g.node(1, jy) - g.bounds(1).lo);
          const cplx w = std::polar(1.0, phase);
          const std::size_t s = std::size_t(sx) * my + sy;
          a += c.component(0)[s] * w;
          b += c.component(1)[s] * w;
        }
      }
      const std::size_t k = std::size_t(jx) * my + jy;
      up[k] = a;
      lo[k] = b;
    }
  }
  return SpinorField(g, nlde::Representation::physical, std::move(up), std::move(lo));
}

/// Random trigonometric polynomial whose modes satisfy |l| < band on each
/// axis; coefficients uniform in the unit square, reproducible from `seed`.
inline SpinorField random_band_limited(const Grid& g, int band, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  struct Term {
    int lx, ly;
    cplx a, b;
  };
  std::vector<Term> terms;
  const int by = g.dim() == 2 ? band : 1;
  for (int lx = -band + 1; lx < band; ++lx) {
    for (int ly = -by + 1; ly < by; ++ly) {
      terms.push_back({lx, ly, cplx(u(rng), u(rng)), cplx(u(rng), u(rng))});
    }
  }
  return SpinorField::sample(g, [&](double x, double y) -> Spinor {
    Spinor v{0.0, 0.0};
    for (const auto& t : terms) {
      double phase = g.wavenumber(0, t.lx) * (x - g.bounds(0).lo);
      if (g.dim() == 2) phase += g.wavenumber(1, t.ly) * (y - g.bounds(1).lo);
      const cplx w = std::polar(1.0, phase);
      v[0] += t.a * w;
      v[1] += t.b * w;
    }
    return v;
  });
}

/// Second-order centered difference along x (1D fields).
inline SpinorField centered_difference(const SpinorField& f) {
  const Grid& g = f.grid();
  const int m = g.modes(0);
  const double h = g.spacing(0);
  SpinorField out(g, nlde::Representation::physical);
  for (int j = 0; j < m; ++j) {
    const Spinor a = f.at((j + 1) % m);
    const Spinor b = f.at((j + m - 1) % m);
    out.set(j, {(a[0] - b[0]) / (2 * h), (a[1] - b[1]) / (2 * h)});
  }
  return out;
}

/// exp(-i t Gamma) = cos(t delta) I - i sin(t delta) / delta Gamma, using
/// Gamma^2 = delta^2 I; independent of the eigen-decomposition.
inline std::array<cplx, 4> propagator_closed_form(double mux, double muy, double t) {
  const double delta = std::sqrt(1.0 + mux * mux + muy * muy);
  const double c = std::cos(t * delta);
  const cplx s = cplx(0.0, -std::sin(t * delta) / delta);
  // Gamma = [[1, mux - i muy], [mux + i muy, -1]]
  return {c + s * 1.0, s * cplx(mux, -muy), s * cplx(mux, muy), c - s * 1.0};
}

/// Free flow by the closed-form propagator on direct-summation coefficients.
inline SpinorField analytic_free_flow(const SpinorField& f, double t) {
  SpinorField c = direct_analyze(f);
  const Grid& g = f.grid();
  for (std::size_t s = 0; s < g.size(); ++s) {
    const int sx = int(s) / g.modes(1);
    const int sy = int(s) % g.modes(1);
    const double mux = g.wavenumber(0, g.mode_number(0, sx));
    const double muy = g.dim() == 2 ? g.wavenumber(1, g.mode_number(1, sy)) : 0.0;
    const auto p = propagator_closed_form(mux, muy, t);
    const Spinor v = c.at(s);
    c.set(s, {p[0] * v[0] + p[1] * v[1], p[2] * v[0] + p[3] * v[1]});
  }
  return direct_synthesize(c);
}

/// One step of length tau approximated by 2^levels Strang substeps.
inline SpinorField nested_substeps(const SpinorField& f, double tau, const nlde::ModelParams& p,
                                   int levels = 10) {
  const long n = 1L << levels;
  nlde::Stepper stepper(f.grid(), nlde::SchemeKind::strang, tau / double(n), p);
  SpinorField u = f;
  for (long k = 0; k < n; ++k) stepper.advance(u);
  return u;
}

/// sqrt(h sum |U_j|^2) with plain loops.
inline double l2_norm(const SpinorField& f) {
  double s = 0.0;
  for (int c = 0; c < 2; ++c) {
    for (cplx v : f.component(c)) s += std::norm(v);
  }
  return std::sqrt(f.grid().cell_volume() * s);
}

}  // namespace oracle
