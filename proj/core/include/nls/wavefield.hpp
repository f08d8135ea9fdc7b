#pragma once

#include <complex>
#include <type_traits>
#include <utility>
#include <vector>

#include "nls/grid.hpp"

namespace nls {

using cdouble = std::complex<double>;

// Complex scalar field sampled on a Grid.
class WaveField {
 public:
  explicit WaveField(GridPtr grid)
      : grid_(std::move(grid)), values_(grid_->size()) {}
  WaveField(GridPtr grid, std::vector<cdouble> values);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  std::vector<cdouble>& values() { return values_; }
  const std::vector<cdouble>& values() const { return values_; }
  cdouble& operator[](std::size_t i) { return values_[i]; }
  const cdouble& operator[](std::size_t i) const { return values_[i]; }

 private:
  GridPtr grid_;
  std::vector<cdouble> values_;
};

// Sample f on the grid. f takes (double x) for dim 1, (double x, double y)
// for dim 2, or (const double* point) for either.
template <class F>
WaveField sample_field(const GridPtr& g, F&& f) {
  WaveField out(g);
  double p[2];
  for (std::size_t i = 0; i < g->size(); ++i) {
    g->point(i, p);
    if constexpr (std::is_invocable_v<F, double, double>) {
      out[i] = f(p[0], p[1]);
    } else if constexpr (std::is_invocable_v<F, double>) {
      out[i] = f(p[0]);
    } else {
      out[i] = f(static_cast<const double*>(p));
    }
  }
  return out;
}

}  // namespace nls
