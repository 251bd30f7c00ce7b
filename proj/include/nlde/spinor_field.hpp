#pragma once

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "nlde/grid.hpp"

namespace nlde {

using cplx = std::complex<double>;
using Spinor = std::array<cplx, 2>;

enum class Representation { physical, fourier };

/// Two-component complex field on a periodic grid.
///
/// Components are stored separately (structure of arrays). In the physical
/// representation entry k is the node value; in the Fourier representation
/// entry k is the coefficient of the mode Grid::mode_number(k) (FFT order).
class SpinorField {
 public:
  SpinorField(Grid grid, Representation rep);
  SpinorField(Grid grid, Representation rep, std::vector<cplx> upper, std::vector<cplx> lower);

  /// Samples f(x, y) at every node; y is ignored (0) in 1D.
  static SpinorField sample(const Grid& grid, const std::function<Spinor(double, double)>& f);

  const Grid& grid() const { return grid_; }
  Representation representation() const { return rep_; }
  bool is_physical() const { return rep_ == Representation::physical; }
  std::size_t size() const { return upper_.size(); }

  std::span<const cplx> component(int c) const { return c == 0 ? upper_ : lower_; }
  std::span<cplx> component(int c) { return c == 0 ? std::span<cplx>(upper_) : lower_; }

  Spinor at(std::size_t k) const { return {upper_[k], lower_[k]}; }
  void set(std::size_t k, const Spinor& v) {
    upper_[k] = v[0];
    lower_[k] = v[1];
  }

  /// Fourier coefficient of mode l (1D) or (lx, ly) (2D). Requires the
  /// Fourier representation.
  Spinor coefficient(int l) const;
  Spinor coefficient(int lx, int ly) const;

  bool all_finite() const;

  SpinorField& operator+=(const SpinorField& other);
  SpinorField& operator-=(const SpinorField& other);
  SpinorField& operator*=(cplx s);

  /// Relabels the representation without touching the data; used by the
  /// transform layer only.
  void set_representation(Representation rep) { rep_ = rep; }

 private:
  void check_compatible(const SpinorField& other) const;

  Grid grid_;
  Representation rep_;
  std::vector<cplx> upper_;
  std::vector<cplx> lower_;
};

SpinorField operator+(SpinorField a, const SpinorField& b);
SpinorField operator-(SpinorField a, const SpinorField& b);
SpinorField operator*(cplx s, SpinorField a);

/// Largest entrywise modulus over both components.
double max_abs_difference(const SpinorField& a, const SpinorField& b);

}  // namespace nlde
