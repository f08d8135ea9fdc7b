#include "nls/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nls {

namespace {
bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
}  // namespace

Grid::Grid(int dim, double half_width, int points_per_axis)
    : dim_(dim), half_width_(half_width), n_(points_per_axis) {
  if (dim != 1 && dim != 2)
    throw std::invalid_argument("grid dim must be 1 or 2, got " +
                                std::to_string(dim));
  if (!(half_width > 0))
    throw std::invalid_argument("grid half_width must be positive");
  if (n_ < 8 || !power_of_two(n_))
    throw std::invalid_argument(
        "points per axis must be a power of two >= 8, got " +
        std::to_string(n_));

  dx_ = 2.0 * half_width_ / n_;
  size_ = 1;
  cell_volume_ = 1.0;
  for (int a = 0; a < dim_; ++a) {
    size_ *= n_;
    cell_volume_ *= dx_;
  }

  coords_.resize(n_);
  waves_.resize(n_);
  const double dk = std::numbers::pi / half_width_;
  for (int i = 0; i < n_; ++i) {
    coords_[i] = -half_width_ + i * dx_;
    int j = i < n_ / 2 ? i : i - n_;
    waves_[i] = dk * j;
  }
}

GridPtr make_grid(int dim, double half_width, int points_per_axis) {
  return std::make_shared<const Grid>(dim, half_width, points_per_axis);
}

}  // namespace nls
