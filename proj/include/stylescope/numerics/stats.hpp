#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "stylescope/errors.hpp"

namespace stylescope::numerics {

// Population convention throughout: variance divides by n.
inline double mean(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

inline double stddev_population(std::span<const double> xs) {
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(xs.size()));
}

// Indices sorted ascending by value, ties by ascending index.
inline std::vector<std::int32_t> argsort_ascending(std::span<const double> xs) {
  std::vector<std::int32_t> idx(xs.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::int32_t a, std::int32_t b) { return xs[a] < xs[b]; });
  return idx;
}

// Linear-interpolation quantile of a copy of xs, q in [0, 1].
inline double quantile(std::span<const double> xs, double q) {
  if (xs.empty()) throw ArgumentError("quantile of empty range");
  std::vector<double> v(xs.begin(), xs.end());
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const auto hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] * (1.0 - frac) + v[hi] * frac;
}

// Top-`count` selection with a fully specified tie rule (value descending,
// then flat index ascending). The returned index set always has exactly
// `count` members; `threshold` is the smallest selected value, so strictly
// larger values are all selected.
struct ThresholdMask {
  double threshold = 0.0;
  std::vector<std::int32_t> indices;  // ascending
};

inline ThresholdMask quantile_threshold(std::span<const double> values, std::int64_t count) {
  const auto n = static_cast<std::int64_t>(values.size());
  if (count < 0 || count > n)
    throw ArgumentError("quantile_threshold: count " + std::to_string(count) +
                        " out of range for " + std::to_string(n) + " values");
  ThresholdMask out;
  if (count == 0) {
    out.threshold = n > 0 ? *std::max_element(values.begin(), values.end()) : 0.0;
    return out;
  }
  std::vector<std::int32_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  auto rank_before = [&](std::int32_t a, std::int32_t b) {
    if (values[a] != values[b]) return values[a] > values[b];
    return a < b;
  };
  std::nth_element(idx.begin(), idx.begin() + (count - 1), idx.end(), rank_before);
  out.threshold = values[idx[static_cast<std::size_t>(count - 1)]];
  out.indices.assign(idx.begin(), idx.begin() + count);
  std::sort(out.indices.begin(), out.indices.end());
  return out;
}

}  // namespace stylescope::numerics
