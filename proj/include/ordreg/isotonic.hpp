#pragma once

#include <span>
#include <vector>

#include "ordreg/types.hpp"

namespace ordreg {

struct IsotonicFit {
  std::vector<double> fitted;  // non-decreasing, clamped to [-M, M]
  double sse = 0.0;            // sum of squared residuals against the input
};

/// Least-squares projection onto non-decreasing sequences with values in
/// [-M, M]. Pool-adjacent-violators, then clamping each pooled level to the
/// box; clamping a non-decreasing sequence keeps it non-decreasing and is
/// optimal for this separable program.
IsotonicFit fit_bounded_isotonic(std::span<const double> values, double bound);

}  // namespace ordreg
