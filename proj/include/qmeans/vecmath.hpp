#pragma once

#include <cstddef>
#include <span>

namespace qmeans {

namespace detail {

// Pairwise (cascade) summation over term(i), i in [first, first+count).
// Error grows O(log n) instead of O(n), which matters for wide vectors.
template <typename Term>
double pairwise_sum(std::size_t first, std::size_t count, Term&& term) {
  if (count <= 64) {
    double s = 0.0;
    for (std::size_t i = first; i < first + count; ++i) s += term(i);
    return s;
  }
  std::size_t half = count / 2;
  return pairwise_sum(first, half, term) +
         pairwise_sum(first + half, count - half, term);
}

inline constexpr std::size_t kPairwiseThreshold = 1024;

}  // namespace detail

inline double dot(std::span<const double> a, std::span<const double> b) {
  std::size_t n = a.size();
  if (n < detail::kPairwiseThreshold) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
  }
  return detail::pairwise_sum(0, n, [&](std::size_t i) { return a[i] * b[i]; });
}

inline double norm2(std::span<const double> a) { return dot(a, a); }

inline double sqdist(std::span<const double> a, std::span<const double> b) {
  std::size_t n = a.size();
  auto term = [&](std::size_t i) {
    double d = a[i] - b[i];
    return d * d;
  };
  if (n < detail::kPairwiseThreshold) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += term(i);
    return s;
  }
  return detail::pairwise_sum(0, n, term);
}

}  // namespace qmeans
