#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace emovec::detail {
namespace {

struct PlanPair {
  fftw_plan forward;
  fftw_plan inverse;
};

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// FFTW_ESTIMATE keeps plan selection independent of timing, so results are
// bit-identical from run to run.
PlanPair plans_for(int n) {
  std::lock_guard lock(planner_mutex());
  static std::map<int, PlanPair> cache;
  if (auto it = cache.find(n); it != cache.end()) return it->second;

  double* real = fftw_alloc_real(static_cast<std::size_t>(n));
  fftw_complex* cplx = fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1));
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  PlanPair p{fftw_plan_dft_r2c_1d(n, real, cplx, flags),
             fftw_plan_dft_c2r_1d(n, cplx, real, flags | FFTW_DESTROY_INPUT)};
  fftw_free(real);
  fftw_free(cplx);
  if (!p.forward || !p.inverse) throw std::runtime_error("FFTW planning failed");
  cache.emplace(n, p);
  return p;
}

}  // namespace

RealFft::RealFft(int size) : size_(size) {
  if (size < 2) throw std::invalid_argument("FFT size must be at least 2");
  PlanPair p = plans_for(size);
  forward_plan_ = p.forward;
  inverse_plan_ = p.inverse;
}

void RealFft::forward(std::span<const double> in, std::span<std::complex<double>> out) const {
  // Out-of-place r2c never writes its input.
  fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
}

void RealFft::inverse(std::span<const std::complex<double>> in, std::span<double> out) const {
  // c2r destroys its input, so work on a copy.
  thread_local std::vector<std::complex<double>> scratch;
  scratch.assign(in.begin(), in.end());
  fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_),
                       reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
}

}  // namespace emovec::detail
