// AVX2/FMA variants. This translation unit is compiled with -mavx2 -mfma and
// must only be entered after cpu_supports_avx2() returned true.

#include <immintrin.h>

#include <cmath>

#include "nlde/simd/kernels.hpp"

namespace nlde::simd {

namespace {

// Two complex numbers per register: [re0, im0, re1, im1].
inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d x) { _mm256_storeu_pd(reinterpret_cast<double*>(p), x); }

inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d a_re = _mm256_movedup_pd(a);
  const __m256d a_im = _mm256_permute_pd(a, 0xF);
  const __m256d b_swap = _mm256_permute_pd(b, 0x5);
  return _mm256_fmaddsub_pd(a_re, b, _mm256_mul_pd(a_im, b_swap));
}

// |z|^2 duplicated into both slots of each complex: [n0, n0, n1, n1].
inline __m256d abs2_dup(__m256d a) {
  const __m256d sq = _mm256_mul_pd(a, a);
  return _mm256_hadd_pd(sq, sq);
}

inline double hsum(__m256d x) {
  const __m128d lo = _mm256_castpd256_pd128(x);
  const __m128d hi = _mm256_extractf128_pd(x, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline cplx mul(cplx a, cplx b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

inline double abs2(cplx a) { return a.real() * a.real() + a.imag() * a.imag(); }

void apply_mode_matrices(const cplx* m00, const cplx* m01, const cplx* m10, const cplx* m11,
                         cplx* u, cplx* v, std::size_t n) {
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d a = load2(u + k);
    const __m256d b = load2(v + k);
    store2(u + k, _mm256_add_pd(cmul(load2(m00 + k), a), cmul(load2(m01 + k), b)));
    store2(v + k, _mm256_add_pd(cmul(load2(m10 + k), a), cmul(load2(m11 + k), b)));
  }
  for (; k < n; ++k) {
    const cplx a = u[k];
    const cplx b = v[k];
    u[k] = mul(m00[k], a) + mul(m01[k], b);
    v[k] = mul(m10[k], a) + mul(m11[k], b);
  }
}

void phase_rates(const cplx* u, const cplx* v, double lambda1, double lambda2, double* plus,
                 double* minus, std::size_t n) {
  const __m256d l1 = _mm256_set1_pd(lambda1);
  const __m256d l2 = _mm256_set1_pd(lambda2);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d a = abs2_dup(load2(u + k));
    const __m256d b = abs2_dup(load2(v + k));
    const __m256d density = _mm256_mul_pd(l2, _mm256_add_pd(a, b));
    const __m256d chiral = _mm256_mul_pd(l1, _mm256_sub_pd(a, b));
    alignas(32) double p[4];
    alignas(32) double m[4];
    _mm256_store_pd(p, _mm256_add_pd(density, chiral));
    _mm256_store_pd(m, _mm256_sub_pd(density, chiral));
    plus[k] = p[0];
    plus[k + 1] = p[2];
    minus[k] = m[0];
    minus[k + 1] = m[2];
  }
  for (; k < n; ++k) {
    const double a = abs2(u[k]);
    const double b = abs2(v[k]);
    plus[k] = lambda2 * (a + b) + lambda1 * (a - b);
    minus[k] = lambda2 * (a + b) - lambda1 * (a - b);
  }
}

void rotate_by_phase(cplx* u, cplx* v, double lambda1, double lambda2, double duration,
                     std::size_t n) {
  const __m256d l1 = _mm256_set1_pd(lambda1);
  const __m256d l2 = _mm256_set1_pd(lambda2);
  const __m256d d = _mm256_set1_pd(duration);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d a = load2(u + k);
    const __m256d b = load2(v + k);
    const __m256d na = abs2_dup(a);
    const __m256d nb = abs2_dup(b);
    const __m256d density = _mm256_mul_pd(l2, _mm256_add_pd(na, nb));
    const __m256d chiral = _mm256_mul_pd(l1, _mm256_sub_pd(na, nb));
    alignas(32) double tp[4];
    alignas(32) double tm[4];
    _mm256_store_pd(tp, _mm256_mul_pd(d, _mm256_add_pd(density, chiral)));
    _mm256_store_pd(tm, _mm256_mul_pd(d, _mm256_sub_pd(density, chiral)));
    // libm sincos keeps the nonlinear sub-flow exact to rounding.
    const __m256d rot_p = _mm256_setr_pd(std::cos(tp[0]), -std::sin(tp[0]), std::cos(tp[2]),
                                         -std::sin(tp[2]));
    const __m256d rot_m = _mm256_setr_pd(std::cos(tm[0]), -std::sin(tm[0]), std::cos(tm[2]),
                                         -std::sin(tm[2]));
    store2(u + k, cmul(a, rot_p));
    store2(v + k, cmul(b, rot_m));
  }
  for (; k < n; ++k) {
    const double na = abs2(u[k]);
    const double nb = abs2(v[k]);
    const double tp = duration * (lambda2 * (na + nb) + lambda1 * (na - nb));
    const double tm = duration * (lambda2 * (na + nb) - lambda1 * (na - nb));
    u[k] = mul(u[k], cplx(std::cos(tp), -std::sin(tp)));
    v[k] = mul(v[k], cplx(std::cos(tm), -std::sin(tm)));
  }
}

double sum_abs2(const cplx* u, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d a = load2(u + k);
    acc = _mm256_fmadd_pd(a, a, acc);
  }
  double s = hsum(acc);
  for (; k < n; ++k) s += abs2(u[k]);
  return s;
}

double weighted_sum_abs2(const cplx* u, const double* w, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d a = load2(u + k);
    // [w0, w0, w1, w1]
    const __m256d wk = _mm256_setr_pd(w[k], w[k], w[k + 1], w[k + 1]);
    acc = _mm256_fmadd_pd(_mm256_mul_pd(wk, a), a, acc);
  }
  double s = hsum(acc);
  for (; k < n; ++k) s += w[k] * abs2(u[k]);
  return s;
}

void multiply(cplx* u, const cplx* s, std::size_t n) {
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) store2(u + k, cmul(load2(u + k), load2(s + k)));
  for (; k < n; ++k) u[k] = mul(u[k], s[k]);
}

}  // namespace

const KernelTable& avx2_kernel_table() {
  static const KernelTable table{"avx2",           apply_mode_matrices, phase_rates,
                                 rotate_by_phase,  sum_abs2,            weighted_sum_abs2,
                                 multiply};
  return table;
}

}  // namespace nlde::simd
