#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "nls/grid.hpp"
#include "nls/spectral.hpp"
#include "nls/wavefield.hpp"

namespace testutil {

inline double linf_diff(const nls::WaveField& a, const nls::WaveField& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Harmonic(1) ground state, unit mass: pi^{-1/4} exp(-x^2/2).
inline nls::WaveField ground_state(const nls::GridPtr& g) {
  return nls::sample_field(g, [](double x) {
    return std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
  });
}

// Deterministic band-limited pseudo-random field: a fixed linear congruence
// fills the lowest modes, everything else is zero. Smooth by construction.
inline nls::WaveField random_band_limited(const nls::GridPtr& g,
                                          std::uint64_t seed, int modes = 12) {
  std::uint64_t s = seed * 6364136223846793005ull + 1442695040888963407ull;
  auto next = [&s]() {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    return double((s >> 33) & 0x7fffffff) / double(0x80000000) - 0.5;
  };
  nls::WaveField hat(g);
  const int n = g->points_per_axis();
  auto idx = [&](int j) { return j >= 0 ? j : n + j; };
  if (g->dim() == 1) {
    for (int j = -modes; j <= modes; ++j)
      hat[idx(j)] = nls::cdouble(next(), next()) / (1.0 + j * j);
  } else {
    for (int jx = -modes; jx <= modes; ++jx)
      for (int jy = -modes; jy <= modes; ++jy)
        hat[std::size_t(idx(jx)) * n + idx(jy)] =
            nls::cdouble(next(), next()) / (1.0 + jx * jx + jy * jy);
  }
  return nls::from_spectrum(hat);
}

}  // namespace testutil
