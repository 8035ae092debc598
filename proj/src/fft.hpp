#pragma once

#include <complex>
#include <span>

namespace emovec::detail {

// Real-input FFT of a fixed size backed by FFTW. Plans are created once per
// size under a lock (the FFTW planner is not thread-safe) and executed
// concurrently on caller-owned buffers.
class RealFft {
 public:
  explicit RealFft(int size);

  int size() const { return size_; }
  int bins() const { return size_ / 2 + 1; }

  // in: size() reals; out: bins() complex values.
  void forward(std::span<const double> in, std::span<std::complex<double>> out) const;
  // in: bins() complex values; out: size() reals, unnormalized (scaled by size()).
  void inverse(std::span<const std::complex<double>> in, std::span<double> out) const;

 private:
  int size_;
  void* forward_plan_;
  void* inverse_plan_;
};

}  // namespace emovec::detail
