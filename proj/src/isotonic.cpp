#include "ordreg/isotonic.hpp"

#include <algorithm>
#include <cmath>

namespace ordreg {

IsotonicFit fit_bounded_isotonic(std::span<const double> values, double bound) {
  if (values.empty()) throw DimensionError("fit_bounded_isotonic: empty input");
  if (!(bound > 0)) throw ParameterError("fit_bounded_isotonic: M must be > 0");
  for (double v : values)
    if (!std::isfinite(v)) throw InvalidValueError("fit_bounded_isotonic: non-finite value");

  struct Block {
    double sum;
    std::size_t count;
    double mean() const { return sum / static_cast<double>(count); }
  };
  std::vector<Block> blocks;
  blocks.reserve(values.size());
  for (double v : values) {
    blocks.push_back({v, 1});
    while (blocks.size() >= 2 &&
           blocks[blocks.size() - 2].mean() > blocks.back().mean()) {
      blocks[blocks.size() - 2].sum += blocks.back().sum;
      blocks[blocks.size() - 2].count += blocks.back().count;
      blocks.pop_back();
    }
  }

  IsotonicFit fit;
  fit.fitted.reserve(values.size());
  for (const Block& b : blocks) {
    const double level = std::clamp(b.mean(), -bound, bound);
    fit.fitted.insert(fit.fitted.end(), b.count, level);
  }
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double r = fit.fitted[k] - values[k];
    fit.sse += r * r;
  }
  return fit;
}

}  // namespace ordreg
