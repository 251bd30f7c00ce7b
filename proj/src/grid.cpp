#include "nlde/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace nlde {

namespace {

void check_axis(const Interval& iv, int modes, const char* axis) {
  if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || !(iv.hi > iv.lo)) {
    throw std::invalid_argument(std::string("grid: axis ") + axis + " needs finite bounds with a < b");
  }
  if (modes < 4 || modes % 2 != 0) {
    throw std::invalid_argument(std::string("grid: axis ") + axis + " mode count " +
                                std::to_string(modes) + " must be even and >= 4");
  }
}

}  // namespace

Grid::Grid(int dim, std::array<Interval, 2> bounds, std::array<int, 2> modes)
    : dim_(dim), bounds_(bounds), modes_(modes) {
  for (int axis = 0; axis < 2; ++axis) {
    spacing_[axis] = bounds_[axis].length() / modes_[axis];
  }
}

Grid Grid::line(double a, double b, int modes) {
  check_axis({a, b}, modes, "x");
  // The unused second axis is a single node of unit length.
  return Grid(1, {Interval{a, b}, Interval{0.0, 1.0}}, {modes, 1});
}

Grid Grid::rect(Interval x, Interval y, int modes_x, int modes_y) {
  check_axis(x, modes_x, "x");
  check_axis(y, modes_y, "y");
  return Grid(2, {x, y}, {modes_x, modes_y});
}

double Grid::cell_volume() const {
  return dim_ == 1 ? spacing_[0] : spacing_[0] * spacing_[1];
}

double Grid::volume() const {
  return dim_ == 1 ? length(0) : length(0) * length(1);
}

int Grid::mode_slot(int axis, int l) const {
  if (!contains_mode(axis, l)) {
    throw std::out_of_range("grid: mode " + std::to_string(l) + " outside T_M for M = " +
                            std::to_string(modes_[axis]));
  }
  return l >= 0 ? l : l + modes_[axis];
}

double Grid::wavenumber(int axis, int l) const {
  return 2.0 * std::numbers::pi * l / length(axis);
}

Grid Grid::with_modes(std::array<int, 2> modes) const {
  if (dim_ == 1) return line(bounds_[0].lo, bounds_[0].hi, modes[0]);
  return rect(bounds_[0], bounds_[1], modes[0], modes[1]);
}

std::string Grid::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "(" << bounds_[0].lo << "," << bounds_[0].hi << ")";
  if (dim_ == 2) os << "x(" << bounds_[1].lo << "," << bounds_[1].hi << ")";
  os << " M=" << modes_[0];
  if (dim_ == 2) os << "x" << modes_[1];
  return os.str();
}

}  // namespace nlde
