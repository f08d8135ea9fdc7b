#include "nls/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "fft.hpp"

namespace nls {

namespace {
void check_same_grid(const WaveField& f, const WaveField& g) {
  if (f.grid() != g.grid())
    throw std::invalid_argument("fields live on different grids");
}
}  // namespace

WaveField::WaveField(GridPtr grid, std::vector<cdouble> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_->size())
    throw std::invalid_argument("value count does not match grid size");
}

WaveField spectrum(const WaveField& f) {
  WaveField out = f;
  const Grid& g = f.grid();
  detail::dft(g.dim(), g.points_per_axis(), out.values().data(), -1);
  const double scale = 1.0 / std::sqrt(static_cast<double>(g.size()));
  for (auto& v : out.values()) v *= scale;
  return out;
}

WaveField from_spectrum(const WaveField& fhat) {
  WaveField out = fhat;
  const Grid& g = fhat.grid();
  detail::dft(g.dim(), g.points_per_axis(), out.values().data(), +1);
  const double scale = 1.0 / std::sqrt(static_cast<double>(g.size()));
  for (auto& v : out.values()) v *= scale;
  return out;
}

std::vector<WaveField> spectral_gradient(const WaveField& f) {
  const Grid& g = f.grid();
  const int n = g.points_per_axis();
  const double inv_total = 1.0 / static_cast<double>(g.size());

  WaveField hat = f;
  detail::dft(g.dim(), n, hat.values().data(), -1);

  std::vector<WaveField> out;
  out.reserve(g.dim());
  for (int axis = 0; axis < g.dim(); ++axis) {
    WaveField comp(f.grid_ptr());
    for (std::size_t i = 0; i < g.size(); ++i) {
      std::size_t j = g.dim() == 1 ? i : (axis == 0 ? i / n : i % n);
      double k = g.wavenumber(static_cast<int>(j));
      comp[i] = cdouble(0.0, k * inv_total) * hat[i];
    }
    detail::dft(g.dim(), n, comp.values().data(), +1);
    out.push_back(std::move(comp));
  }
  return out;
}

double l2_norm(const WaveField& f) {
  double s = 0;
  for (const auto& v : f.values()) s += std::norm(v);
  return std::sqrt(s * f.grid().cell_volume());
}

cdouble inner_product(const WaveField& f, const WaveField& g) {
  check_same_grid(f, g);
  cdouble s = 0;
  for (std::size_t i = 0; i < f.size(); ++i) s += std::conj(f[i]) * g[i];
  return s * f.grid().cell_volume();
}

double lp_norm(const WaveField& f, double p) {
  if (!(p >= 1)) throw std::invalid_argument("lp_norm requires p >= 1");
  double s = 0;
  for (const auto& v : f.values()) s += std::pow(std::abs(v), p);
  return std::pow(s * f.grid().cell_volume(), 1.0 / p);
}

double sup_norm(const WaveField& f) {
  double m = 0;
  for (const auto& v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace nls
