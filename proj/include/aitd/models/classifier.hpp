#pragma once

#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "aitd/sparse.hpp"

namespace aitd {

struct Prediction {
  int label = 0;
  std::vector<double> probabilities;
  /// Family-specific raw output (margin, log-odds, positive-class mean...).
  double score = 0.0;
};

/// argmax with ties going to the lowest class index.
int argmax_label(const std::vector<double>& probabilities);

/// Shared inference contract for every trained model family.
class Classifier {
 public:
  virtual ~Classifier() = default;

  virtual std::string family() const = 0;
  virtual std::size_t n_features() const = 0;
  virtual int n_classes() const = 0;

  /// Throws DimensionMismatch when x lives in a different feature space.
  Prediction predict(const SparseVector& x) const;
  std::vector<Prediction> predict_all(const SparseMatrix& X, unsigned threads = 1) const;

  virtual nlohmann::json to_json() const = 0;

 protected:
  virtual Prediction predict_unchecked(const SparseVector& x) const = 0;
};

/// Rebuilds any family from the JSON written by Classifier::to_json.
std::unique_ptr<Classifier> classifier_from_json(const nlohmann::json& j);

double sigmoid(double z);

}  // namespace aitd
