#include <cmath>

#include "nlde/simd/kernels.hpp"

namespace nlde::simd {

namespace {

// Plain component arithmetic; std::complex operator* goes through the
// Annex G NaN-recovery path, which is slow and unnecessary here.
inline cplx mul(cplx a, cplx b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

inline double abs2(cplx a) { return a.real() * a.real() + a.imag() * a.imag(); }

void apply_mode_matrices(const cplx* m00, const cplx* m01, const cplx* m10, const cplx* m11,
                         cplx* u, cplx* v, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const cplx a = u[k];
    const cplx b = v[k];
    u[k] = mul(m00[k], a) + mul(m01[k], b);
    v[k] = mul(m10[k], a) + mul(m11[k], b);
  }
}

void phase_rates(const cplx* u, const cplx* v, double lambda1, double lambda2, double* plus,
                 double* minus, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const double a = abs2(u[k]);
    const double b = abs2(v[k]);
    const double density = lambda2 * (a + b);
    const double chiral = lambda1 * (a - b);
    plus[k] = density + chiral;
    minus[k] = density - chiral;
  }
}

void rotate_by_phase(cplx* u, cplx* v, double lambda1, double lambda2, double duration,
                     std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const double a = abs2(u[k]);
    const double b = abs2(v[k]);
    const double density = lambda2 * (a + b);
    const double chiral = lambda1 * (a - b);
    const double tp = duration * (density + chiral);
    const double tm = duration * (density - chiral);
    u[k] = mul(u[k], cplx(std::cos(tp), -std::sin(tp)));
    v[k] = mul(v[k], cplx(std::cos(tm), -std::sin(tm)));
  }
}

double sum_abs2(const cplx* u, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += abs2(u[k]);
  return s;
}

double weighted_sum_abs2(const cplx* u, const double* w, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += w[k] * abs2(u[k]);
  return s;
}

void multiply(cplx* u, const cplx* s, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) u[k] = mul(u[k], s[k]);
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar",         apply_mode_matrices, phase_rates,
                                 rotate_by_phase,  sum_abs2,            weighted_sum_abs2,
                                 multiply};
  return table;
}

}  // namespace nlde::simd
