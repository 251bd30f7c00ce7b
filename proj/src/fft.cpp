#include "nlde/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace nlde::fft {

namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::array<int, 2> extents, int sign) {
    const auto key = std::make_tuple(extents[0], extents[1], sign);
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    const std::size_t n = static_cast<std::size_t>(extents[0]) * extents[1];
    std::vector<fftw_complex> scratch(n);
    // UNALIGNED so the plan can run on any caller buffer via new-array execute.
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan = extents[1] == 1
                         ? fftw_plan_dft_1d(extents[0], scratch.data(), scratch.data(), sign, flags)
                         : fftw_plan_dft_2d(extents[0], extents[1], scratch.data(), scratch.data(),
                                            sign, flags);
    if (plan == nullptr) throw std::runtime_error("fft: plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void run(std::span<std::complex<double>> data, std::array<int, 2> extents, int sign) {
  if (data.size() != static_cast<std::size_t>(extents[0]) * extents[1]) {
    throw std::invalid_argument("fft: buffer size does not match extents");
  }
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(cache().get(extents, sign), ptr, ptr);
}

}  // namespace

void forward(std::span<std::complex<double>> data, std::array<int, 2> extents) {
  run(data, extents, FFTW_FORWARD);
}

void backward(std::span<std::complex<double>> data, std::array<int, 2> extents) {
  run(data, extents, FFTW_BACKWARD);
}

}  // namespace nlde::fft
