#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ordreg/types.hpp"

namespace ordreg {

struct R2Options {
  // Samples with no labeled predecessor in the ranking get value 0; with
  // this flag they get the lowest de-noised anchor instead.
  bool star_clamp_to_lowest = false;
  // Drop star-imputed rows from the prediction neighbor set.
  bool exclude_star_neighbors = false;
};

/// Ranking-regression model: de-noised anchor values propagated along the
/// ranking, predictions by k-NN over the imputed universe.
class R2Model {
 public:
  R2Model() = default;

  double predict(std::span<const double> query) const;

  std::size_t size() const { return n_; }
  std::size_t dim() const { return d_; }
  std::size_t k() const { return k_; }
  const std::vector<double>& imputed() const { return imputed_; }
  const std::vector<std::uint8_t>& star_mask() const { return star_; }
  const ModelBounds& bounds() const { return bounds_; }

  void save(const std::string& path) const;
  static R2Model load(const std::string& path);

  friend R2Model fit_r2(const SampleSet&, std::span<const std::size_t>,
                        std::span<const double>, const Ranking&, std::size_t,
                        const ModelBounds&, const R2Options&);

 private:
  std::size_t n_ = 0, d_ = 0, k_ = 1;
  std::vector<double> features_;  // n x d row-major copy of the universe
  std::vector<double> imputed_;   // one value per universe sample
  std::vector<std::uint8_t> star_;
  ModelBounds bounds_;
  R2Options options_;
};

/// Fit: order labeled values along the ranking, de-noise with bounded
/// isotonic regression, then give every sample the de-noised value of the
/// labeled sample at the largest rank position not exceeding its own.
/// Samples before the first labeled position get the star value (0).
R2Model fit_r2(const SampleSet& universe, std::span<const std::size_t> labeled_idx,
               std::span<const double> labels, const Ranking& ranking, std::size_t k,
               const ModelBounds& bounds = {}, const R2Options& options = {});

double predict_r2(const R2Model& model, std::span<const double> query);

/// A named predictor competing in cross-validated selection.
struct Candidate {
  std::string name;
  std::function<double(std::span<const double>)> predict;
};

struct CvSelection {
  std::size_t chosen = 0;
  std::vector<double> scores;  // validation MSE per candidate
};

/// Pick the candidate with the lowest empirical squared error on the labeled
/// rows of `validation`; predictions are clipped to [-M, M] before scoring
/// and ties go to the earlier candidate.
CvSelection cv_select(const std::vector<Candidate>& candidates,
                      const SampleSet& validation, double bound);

}  // namespace ordreg
