#pragma once

#include <complex>

namespace nls::detail {

// In-place unnormalized DFT on a dim-dimensional array with n points per
// axis, row-major. sign = -1 forward (e^{-i k x} convention), +1 backward.
// Plans are cached per (dim, n, sign); execution is thread-safe.
void dft(int dim, int n, std::complex<double>* data, int sign);

}  // namespace nls::detail
