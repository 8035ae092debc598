#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "emovec/kernels.hpp"

namespace emovec::kernels {

std::vector<double> reflect_pad(std::span<const double> x, std::size_t pad) {
  const std::size_t n = x.size();
  std::vector<double> out(n + 2 * pad, 0.0);
  if (n == 0) return out;
  if (n == 1) {
    std::fill(out.begin(), out.end(), x[0]);
    return out;
  }
  const long period = 2 * static_cast<long>(n) - 2;
  for (std::size_t i = 0; i < out.size(); ++i) {
    long k = static_cast<long>(i) - static_cast<long>(pad);
    k %= period;
    if (k < 0) k += period;
    if (k >= static_cast<long>(n)) k = period - k;
    out[i] = x[static_cast<std::size_t>(k)];
  }
  return out;
}

std::vector<double> hann_window(std::size_t length) {
  std::vector<double> w(length);
  for (std::size_t i = 0; i < length; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                static_cast<double>(length));
  }
  return w;
}

PolyphaseFilter PolyphaseFilter::design(int source_rate, int target_rate) {
  if (source_rate <= 0 || target_rate <= 0) throw std::invalid_argument("rates must be positive");
  constexpr double kZeroCrossings = 32.0;
  constexpr double kRolloff = 0.95;
  constexpr double kBeta = 8.6;

  const long g = std::gcd(source_rate, target_rate);
  PolyphaseFilter f;
  f.up = target_rate / g;
  f.down = source_rate / g;
  // Cutoff relative to the input Nyquist; below 1 when decimating.
  const double cutoff = kRolloff * std::min(1.0, static_cast<double>(f.up) / f.down);
  const double half_width = kZeroCrossings / cutoff;  // in input samples
  f.half_taps = static_cast<long>(std::ceil(half_width));
  const long taps = 2 * f.half_taps;
  f.bank.resize(static_cast<std::size_t>(f.up * taps));

  const double norm = std::cyl_bessel_i(0.0, kBeta);
  for (long phase = 0; phase < f.up; ++phase) {
    const double frac = static_cast<double>(phase) / static_cast<double>(f.up);
    for (long k = -f.half_taps + 1; k <= f.half_taps; ++k) {
      const double t = static_cast<double>(k) - frac;
      double h = 0.0;
      if (std::abs(t) < half_width) {
        const double arg = cutoff * t;
        const double sinc =
            arg == 0.0 ? 1.0 : std::sin(std::numbers::pi * arg) / (std::numbers::pi * arg);
        const double r = t / half_width;
        const double kaiser = std::cyl_bessel_i(0.0, kBeta * std::sqrt(1.0 - r * r)) / norm;
        h = cutoff * sinc * kaiser;
      }
      f.bank[static_cast<std::size_t>(phase * taps + k + f.half_taps - 1)] = h;
    }
  }
  return f;
}

}  // namespace emovec::kernels
