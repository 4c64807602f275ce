#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "ordreg/types.hpp"

namespace ordreg {

inline double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("dot: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double squared_norm(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(squared_norm(a)); }

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("squared_distance: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    s += diff * diff;
  }
  return s;
}

/// Normalize in place; throws DegenerateError on a (near-)zero vector.
inline void normalize(std::vector<double>& v) {
  const double n = norm(v);
  if (!(n > 0.0)) throw DegenerateError("normalize: zero vector");
  for (double& x : v) x /= n;
}

/// Angle between two vectors in radians.
inline double angle_between(std::span<const double> a, std::span<const double> b) {
  const double c = dot(a, b) / (norm(a) * norm(b));
  return std::acos(std::max(-1.0, std::min(1.0, c)));
}

/// Indices of the k nearest rows of a flat row-major (n x d) matrix to a
/// query point, by Euclidean distance; exact distance ties break toward the
/// lower index. Brute-force scan: n here is small enough that a tree never
/// pays for itself.
std::vector<std::size_t> k_nearest(std::span<const double> rows, std::size_t n,
                                   std::size_t d, std::span<const double> query,
                                   std::size_t k);

}  // namespace ordreg
