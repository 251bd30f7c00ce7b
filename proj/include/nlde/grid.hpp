#pragma once

#include <array>
#include <cstddef>
#include <string>

namespace nlde {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool operator==(const Interval&) const = default;
};

/// Uniform periodic grid on a box in 1 or 2 dimensions.
///
/// Axis j carries M_j nodes x = a_j + k h_j, k = 0..M_j-1; the node at
/// k = M_j is identified with k = 0. Field storage is x-major: the flat
/// index of node (kx, ky) is kx * M_y + ky, and in 1D M_y == 1.
class Grid {
 public:
  static Grid line(double a, double b, int modes);
  static Grid rect(Interval x, Interval y, int modes_x, int modes_y);

  int dim() const { return dim_; }
  int modes(int axis) const { return modes_[axis]; }
  std::array<int, 2> modes() const { return modes_; }
  const Interval& bounds(int axis) const { return bounds_[axis]; }
  double spacing(int axis) const { return spacing_[axis]; }
  double length(int axis) const { return bounds_[axis].length(); }

  /// Number of stored nodes (product of M_j).
  std::size_t size() const {
    return static_cast<std::size_t>(modes_[0]) * static_cast<std::size_t>(modes_[1]);
  }
  /// Product of the spacings; the weight of the rectangle rule.
  double cell_volume() const;
  /// Product of the box lengths.
  double volume() const;

  double node(int axis, int k) const { return bounds_[axis].lo + k * spacing_[axis]; }

  /// Mode number l in T_M for FFT-ordered storage slot k.
  int mode_number(int axis, int k) const {
    const int m = modes_[axis];
    return k < m / 2 ? k : k - m;
  }
  /// Storage slot for l in T_M; throws std::out_of_range outside T_M.
  int mode_slot(int axis, int l) const;
  bool contains_mode(int axis, int l) const {
    return l >= -modes_[axis] / 2 && l < modes_[axis] / 2;
  }
  /// mu_l = 2 pi l / (b - a).
  double wavenumber(int axis, int l) const;

  /// Same box, different mode counts.
  Grid with_modes(std::array<int, 2> modes) const;

  bool operator==(const Grid& other) const = default;

  std::string describe() const;

 private:
  Grid(int dim, std::array<Interval, 2> bounds, std::array<int, 2> modes);

  int dim_ = 1;
  std::array<Interval, 2> bounds_{};
  std::array<int, 2> modes_{1, 1};
  std::array<double, 2> spacing_{1.0, 1.0};
};

}  // namespace nlde
