#pragma once

#include <array>
#include <complex>
#include <span>

namespace nlde::fft {

/// In-place unnormalized DFT over an x-major 1D/2D array of extents
/// (mx, my); my == 1 selects the 1D transform.
///
/// forward:  X_k = sum_j x_j exp(-2 pi i jk/M)
/// backward: x_j = sum_k X_k exp(+2 pi i jk/M)
///
/// Plans are created once per (extents, direction) under a lock and
/// executed lock-free; safe to call from several threads.
void forward(std::span<std::complex<double>> data, std::array<int, 2> extents);
void backward(std::span<std::complex<double>> data, std::array<int, 2> extents);

}  // namespace nlde::fft
