#pragma once

#include <string>

#include "ordreg/rank_aggregate.hpp"
#include "ordreg/types.hpp"

namespace ordreg {

// Dataset CSV: header "f0,...,f{d-1}[,y]"; an empty y cell marks an
// unlabeled row. The y column is present iff any row is labeled.
void save_dataset_csv(const std::string& path, const SampleSet& data);
SampleSet load_dataset_csv(const std::string& path);

// Ranking file: one sample index per line; line k holds the index at rank
// position k.
void save_ranking(const std::string& path, const Ranking& ranking);
Ranking load_ranking(const std::string& path);

// Comparison CSV: header "i,j,z".
void save_comparisons_csv(const std::string& path, const ComparisonSet& comparisons);
ComparisonSet load_comparisons_csv(const std::string& path);

// Flat scorer dump for inspection: kind, then one score per line.
void save_scorer(const std::string& path, const Scorer& scorer);

}  // namespace ordreg
