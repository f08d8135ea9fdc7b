#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace nls::detail {

namespace {

// FFTW_ESTIMATE keeps planning deterministic (no runtime measurement),
// FFTW_UNALIGNED lets one plan serve any buffer via fftw_execute_dft.
fftw_plan make_plan(int dim, int n, int sign) {
  fftw_complex* scratch =
      fftw_alloc_complex(static_cast<std::size_t>(n) * (dim == 2 ? n : 1));
  fftw_plan plan =
      dim == 1
          ? fftw_plan_dft_1d(n, scratch, scratch, sign,
                             FFTW_ESTIMATE | FFTW_UNALIGNED)
          : fftw_plan_dft_2d(n, n, scratch, scratch, sign,
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(scratch);
  return plan;
}

}  // namespace

void dft(int dim, int n, std::complex<double>* data, int sign) {
  static std::map<std::tuple<int, int, int>, fftw_plan> cache;
  static std::mutex mutex;

  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_tuple(dim, n, sign);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, make_plan(dim, n, sign)).first;
    plan = it->second;
  }
  // std::complex<double> is layout-compatible with fftw_complex.
  fftw_complex* raw = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan, raw, raw);
}

}  // namespace nls::detail
