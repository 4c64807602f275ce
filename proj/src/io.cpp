#include "ordreg/io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace ordreg {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InvalidValueError("csv: bad " + what + " value '" + s + "'");
  }
}

}  // namespace

void save_dataset_csv(const std::string& path, const SampleSet& data) {
  std::ofstream os(path);
  if (!os) throw Error("save_dataset_csv: cannot open " + path);
  os.precision(17);
  const bool with_labels = data.labeled_count() > 0;
  for (std::size_t j = 0; j < data.dim(); ++j) os << (j ? "," : "") << "f" << j;
  if (with_labels) os << ",y";
  os << "\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto r = data.row(i);
    for (std::size_t j = 0; j < data.dim(); ++j) os << (j ? "," : "") << r[j];
    if (with_labels) {
      os << ",";
      if (data.has_label(i)) os << data.label(i);
    }
    os << "\n";
  }
}

SampleSet load_dataset_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("load_dataset_csv: cannot open " + path);
  std::string line;
  if (!std::getline(is, line)) throw Error("load_dataset_csv: empty file");
  const auto header = split_csv(line);
  if (header.empty() || header[0] != "f0")
    throw Error("load_dataset_csv: malformed header");
  const bool with_labels = header.back() == "y";
  const std::size_t d = header.size() - (with_labels ? 1 : 0);

  std::vector<double> features;
  std::vector<std::pair<std::size_t, double>> labels;
  std::size_t n = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != header.size())
      throw Error("load_dataset_csv: row width mismatch at line " + std::to_string(n + 2));
    for (std::size_t j = 0; j < d; ++j)
      features.push_back(parse_double(fields[j], "feature"));
    if (with_labels && !fields[d].empty())
      labels.emplace_back(n, parse_double(fields[d], "label"));
    ++n;
  }
  SampleSet data(n, d, std::move(features));
  for (const auto& [i, y] : labels) data.set_label(i, y);
  return data;
}

void save_ranking(const std::string& path, const Ranking& ranking) {
  std::ofstream os(path);
  if (!os) throw Error("save_ranking: cannot open " + path);
  for (std::size_t k = 0; k < ranking.size(); ++k) os << ranking.index_at(k) << "\n";
}

Ranking load_ranking(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("load_ranking: cannot open " + path);
  std::vector<std::size_t> order;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    order.push_back(static_cast<std::size_t>(std::stoull(line)));
  }
  return Ranking(std::move(order));
}

void save_comparisons_csv(const std::string& path, const ComparisonSet& comparisons) {
  std::ofstream os(path);
  if (!os) throw Error("save_comparisons_csv: cannot open " + path);
  os << "i,j,z\n";
  for (const auto& c : comparisons) os << c.i << "," << c.j << "," << c.z << "\n";
}

ComparisonSet load_comparisons_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("load_comparisons_csv: cannot open " + path);
  std::string line;
  if (!std::getline(is, line) || split_csv(line) != std::vector<std::string>{"i", "j", "z"})
    throw Error("load_comparisons_csv: malformed header");
  ComparisonSet out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != 3) throw Error("load_comparisons_csv: bad row '" + line + "'");
    out.add(static_cast<std::size_t>(std::stoull(fields[0])),
            static_cast<std::size_t>(std::stoull(fields[1])), std::stoi(fields[2]));
  }
  return out;
}

void save_scorer(const std::string& path, const Scorer& scorer) {
  std::ofstream os(path);
  if (!os) throw Error("save_scorer: cannot open " + path);
  os.precision(17);
  switch (scorer.kind) {
    case ScorerKind::borda: os << "borda\n"; break;
    case ScorerKind::knn_borda: os << "knn-borda\n"; break;
    case ScorerKind::ranksvm: os << "ranksvm\n"; break;
  }
  for (double s : scorer.scores) os << s << "\n";
}

}  // namespace ordreg
