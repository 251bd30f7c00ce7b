#include "nlde/spinor_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nlde {

SpinorField::SpinorField(Grid grid, Representation rep)
    : grid_(std::move(grid)), rep_(rep), upper_(grid_.size()), lower_(grid_.size()) {}

SpinorField::SpinorField(Grid grid, Representation rep, std::vector<cplx> upper,
                         std::vector<cplx> lower)
    : grid_(std::move(grid)), rep_(rep), upper_(std::move(upper)), lower_(std::move(lower)) {
  if (upper_.size() != grid_.size() || lower_.size() != grid_.size()) {
    throw std::invalid_argument("spinor field: value count does not match grid size");
  }
}

SpinorField SpinorField::sample(const Grid& grid, const std::function<Spinor(double, double)>& f) {
  SpinorField out(grid, Representation::physical);
  const int mx = grid.modes(0);
  const int my = grid.modes(1);
  for (int kx = 0; kx < mx; ++kx) {
    const double x = grid.node(0, kx);
    for (int ky = 0; ky < my; ++ky) {
      const double y = grid.dim() == 2 ? grid.node(1, ky) : 0.0;
      out.set(static_cast<std::size_t>(kx) * my + ky, f(x, y));
    }
  }
  return out;
}

Spinor SpinorField::coefficient(int l) const {
  if (rep_ != Representation::fourier || grid_.dim() != 1) {
    throw std::logic_error("spinor field: 1D coefficient access needs a 1D Fourier field");
  }
  return at(static_cast<std::size_t>(grid_.mode_slot(0, l)));
}

Spinor SpinorField::coefficient(int lx, int ly) const {
  if (rep_ != Representation::fourier || grid_.dim() != 2) {
    throw std::logic_error("spinor field: 2D coefficient access needs a 2D Fourier field");
  }
  const auto k = static_cast<std::size_t>(grid_.mode_slot(0, lx)) * grid_.modes(1) +
                 static_cast<std::size_t>(grid_.mode_slot(1, ly));
  return at(k);
}

bool SpinorField::all_finite() const {
  auto finite = [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
  return std::all_of(upper_.begin(), upper_.end(), finite) &&
         std::all_of(lower_.begin(), lower_.end(), finite);
}

void SpinorField::check_compatible(const SpinorField& other) const {
  if (!(grid_ == other.grid_) || rep_ != other.rep_) {
    throw std::invalid_argument("spinor field: grid or representation mismatch");
  }
}

SpinorField& SpinorField::operator+=(const SpinorField& other) {
  check_compatible(other);
  for (std::size_t k = 0; k < size(); ++k) {
    upper_[k] += other.upper_[k];
    lower_[k] += other.lower_[k];
  }
  return *this;
}

SpinorField& SpinorField::operator-=(const SpinorField& other) {
  check_compatible(other);
  for (std::size_t k = 0; k < size(); ++k) {
    upper_[k] -= other.upper_[k];
    lower_[k] -= other.lower_[k];
  }
  return *this;
}

SpinorField& SpinorField::operator*=(cplx s) {
  for (auto& z : upper_) z *= s;
  for (auto& z : lower_) z *= s;
  return *this;
}

SpinorField operator+(SpinorField a, const SpinorField& b) { return a += b; }
SpinorField operator-(SpinorField a, const SpinorField& b) { return a -= b; }
SpinorField operator*(cplx s, SpinorField a) { return a *= s; }

double max_abs_difference(const SpinorField& a, const SpinorField& b) {
  if (!(a.grid() == b.grid()) || a.representation() != b.representation()) {
    throw std::invalid_argument("max_abs_difference: grid or representation mismatch");
  }
  double worst = 0.0;
  for (int c = 0; c < 2; ++c) {
    auto x = a.component(c);
    auto y = b.component(c);
    for (std::size_t k = 0; k < x.size(); ++k) worst = std::max(worst, std::abs(x[k] - y[k]));
  }
  return worst;
}

}  // namespace nlde
