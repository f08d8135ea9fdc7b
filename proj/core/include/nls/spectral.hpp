#pragma once

#include <vector>

#include "nls/wavefield.hpp"

namespace nls {

// Unitary discrete Fourier transform pair: both directions carry a
// 1/sqrt(N^dim) factor, so Parseval holds without extra scale factors and
// l2_norm(spectrum(f)) == l2_norm(f).
WaveField spectrum(const WaveField& f);
WaveField from_spectrum(const WaveField& fhat);

// Derivative along each axis via the ik multiplier in Fourier space.
// Component a equals IFFT(i k_a FFT(f)).
std::vector<WaveField> spectral_gradient(const WaveField& f);

// sqrt(sum |f_i|^2 dx^dim), the grid L2 norm.
double l2_norm(const WaveField& f);
// sum conj(f_i) g_i dx^dim; conjugate-linear in the first argument.
cdouble inner_product(const WaveField& f, const WaveField& g);
// (sum |f_i|^p dx^dim)^(1/p), p >= 1.
double lp_norm(const WaveField& f, double p);
// max_i |f_i|.
double sup_norm(const WaveField& f);

}  // namespace nls
