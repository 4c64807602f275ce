#pragma once

#include <span>
#include <vector>

#include "ordreg/rng.hpp"
#include "ordreg/types.hpp"

namespace ordreg {

/// Kendall-Tau disagreement between two rankings of the same universe.
/// Counts ordered pairs (i, j) whose relative order differs, i.e. each
/// discordant unordered pair contributes 2; nu = count / n^2.
RankingNoiseReport kendall_tau(const Ranking& a, const Ranking& b);

/// Ranking that sorts indices by ascending value; ties broken by ascending
/// index (stable). NaN anywhere is an error.
Ranking ranking_from_values(std::span<const double> values);

/// Mean squared componentwise difference.
double mse_eval(std::span<const double> pred, std::span<const double> truth);

/// m distinct indices drawn uniformly over all size-m subsets of
/// {0,...,n-1}; returned sorted ascending. Deterministic given the stream.
std::vector<std::size_t> sample_labeled_subset(std::size_t n, std::size_t m, Rng& rng);

}  // namespace ordreg
