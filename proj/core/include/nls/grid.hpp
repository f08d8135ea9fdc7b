#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace nls {

// Uniform periodic grid on [-L, L)^dim with N points per axis, N a power of
// two. Point i along an axis sits at x_i = -L + i*dx with dx = 2L/N.
// Wavenumbers follow FFT ordering: k_j = pi*j/L for j = 0..N/2-1, then
// j = -N/2..-1. Fields on the grid are stored row-major (dim == 2:
// flat index = ix*N + iy).
class Grid {
 public:
  Grid(int dim, double half_width, int points_per_axis);

  int dim() const { return dim_; }
  double half_width() const { return half_width_; }
  int points_per_axis() const { return n_; }
  double spacing() const { return dx_; }
  std::size_t size() const { return size_; }
  // Quadrature weight of one cell, dx^dim. Sums weighted by this value
  // approximate integrals over the box.
  double cell_volume() const { return cell_volume_; }

  double coordinate(int i) const { return coords_[i]; }
  double wavenumber(int j) const { return waves_[j]; }
  const std::vector<double>& coordinates() const { return coords_; }
  const std::vector<double>& wavenumbers() const { return waves_; }

  // Coordinates of flat index i, valid for the grid's dim.
  void point(std::size_t i, double* out) const {
    if (dim_ == 1) {
      out[0] = coords_[i];
    } else {
      out[0] = coords_[i / n_];
      out[1] = coords_[i % n_];
    }
  }
  // |k|^2 of flat index i in FFT ordering.
  double wavenumber_sq(std::size_t i) const {
    if (dim_ == 1) {
      double k = waves_[i];
      return k * k;
    }
    double kx = waves_[i / n_];
    double ky = waves_[i % n_];
    return kx * kx + ky * ky;
  }
  bool on_boundary(std::size_t i) const {
    if (dim_ == 1) return i == 0 || i + 1 == static_cast<std::size_t>(n_);
    std::size_t ix = i / n_, iy = i % n_;
    std::size_t last = static_cast<std::size_t>(n_) - 1;
    return ix == 0 || ix == last || iy == 0 || iy == last;
  }

  bool operator==(const Grid& o) const {
    return dim_ == o.dim_ && half_width_ == o.half_width_ && n_ == o.n_;
  }
  bool operator!=(const Grid& o) const { return !(*this == o); }

 private:
  int dim_;
  double half_width_;
  int n_;
  double dx_;
  std::size_t size_;
  double cell_volume_;
  std::vector<double> coords_;
  std::vector<double> waves_;
};

using GridPtr = std::shared_ptr<const Grid>;

// Validates dim in {1,2}, half_width > 0, points_per_axis a power of two >= 8.
GridPtr make_grid(int dim, double half_width, int points_per_axis);

}  // namespace nls
