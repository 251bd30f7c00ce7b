#pragma once

// Data-parallel inner loops of the solver.
//
// Every kernel has a portable scalar reference in kernels_scalar.cpp. An
// AVX2/FMA variant (kernels_avx2.cpp, compiled with -mavx2 -mfma) is picked
// at runtime when the CPU supports it. Variants agree to rounding (FMA
// contraction changes the last bits), which the equivalence tests pin.

#include <complex>
#include <cstddef>

namespace nlde::simd {

using cplx = std::complex<double>;

struct KernelTable {
  const char* name;

  /// (u, v)[k] <- M[k] (u, v)[k] with M[k] = [[m00 m01] [m10 m11]].
  void (*apply_mode_matrices)(const cplx* m00, const cplx* m01, const cplx* m10,
                              const cplx* m11, cplx* u, cplx* v, std::size_t n);

  /// plus[k] = l2 (|u|^2 + |v|^2) + l1 (|u|^2 - |v|^2), minus likewise with -l1.
  void (*phase_rates)(const cplx* u, const cplx* v, double lambda1, double lambda2,
                      double* plus, double* minus, std::size_t n);

  /// u[k] *= exp(-i d plus[k]), v[k] *= exp(-i d minus[k]), with the rates
  /// computed from the current (u, v) as in phase_rates.
  void (*rotate_by_phase)(cplx* u, cplx* v, double lambda1, double lambda2, double duration,
                          std::size_t n);

  /// sum_k |u[k]|^2
  double (*sum_abs2)(const cplx* u, std::size_t n);

  /// sum_k w[k] |u[k]|^2
  double (*weighted_sum_abs2)(const cplx* u, const double* w, std::size_t n);

  /// u[k] *= s[k] (complex, elementwise)
  void (*multiply)(cplx* u, const cplx* s, std::size_t n);
};

const KernelTable& scalar_kernels();

/// nullptr when the AVX2 variant was not compiled in.
const KernelTable* avx2_kernels();

bool cpu_supports_avx2();

/// The table used by the library. AVX2 when compiled and supported, unless
/// the environment variable NLDE_FORCE_SCALAR is set.
const KernelTable& active_kernels();

}  // namespace nlde::simd
