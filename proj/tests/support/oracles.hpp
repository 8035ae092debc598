#pragma once

// Brute-force reference computations.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace emovec::test {

/// Linear-interpolated p-th percentile by sorting and indexing.
inline double sorted_percentile(std::vector<double> v, double p) {
  std::sort(v.begin(), v.end());
  const double pos = p / 100.0 * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

/// (#values < q + 0.5 * #values == q) / n.
inline double midrank_fraction(std::span<const double> values, double q) {
  double below = 0.0, equal = 0.0;
  for (double v : values) {
    below += v < q;
    equal += v == q;
  }
  return (below + 0.5 * equal) / static_cast<double>(values.size());
}

/// #{(x, y): x > y} + 0.5 #{x == y}.
inline double pair_count_u(std::span<const double> a, std::span<const double> b) {
  double u = 0.0;
  for (double x : a) {
    for (double y : b) u += x > y ? 1.0 : (x == y ? 0.5 : 0.0);
  }
  return u;
}

}  // namespace emovec::test
