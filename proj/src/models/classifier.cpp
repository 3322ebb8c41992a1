#include "aitd/models/classifier.hpp"

#include <cmath>

#include "aitd/error.hpp"
#include "aitd/models/boosted.hpp"
#include "aitd/models/forest.hpp"
#include "aitd/models/mlp.hpp"
#include "aitd/models/svm.hpp"
#include "aitd/models/tree.hpp"
#include "aitd/parallel.hpp"

namespace aitd {

int argmax_label(const std::vector<double>& probabilities) {
  int best = 0;
  for (int c = 1; c < static_cast<int>(probabilities.size()); ++c) {
    if (probabilities[c] > probabilities[best]) best = c;
  }
  return best;
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

Prediction Classifier::predict(const SparseVector& x) const {
  if (x.dim != n_features()) {
    throw Error(ErrorKind::DimensionMismatch, "model expects " + std::to_string(n_features()) + " features, got " +
                                                  std::to_string(x.dim));
  }
  return predict_unchecked(x);
}

std::vector<Prediction> Classifier::predict_all(const SparseMatrix& X, unsigned threads) const {
  std::vector<Prediction> out(X.rows());
  parallel_for(X.rows(), threads, [&](std::size_t r) { out[r] = predict(X.row_vector(r)); });
  return out;
}

std::unique_ptr<Classifier> classifier_from_json(const nlohmann::json& j) {
  const auto family = j.at("family").get<std::string>();
  if (family == "tree") return std::make_unique<DecisionTree>(DecisionTree::from_json(j));
  if (family == "forest") return std::make_unique<ForestModel>(ForestModel::from_json(j));
  if (family == "boosted") return std::make_unique<BoostedModel>(BoostedModel::from_json(j));
  if (family == "boosted_ovr") return std::make_unique<OneVsRestBoosted>(OneVsRestBoosted::from_json(j));
  if (family == "svm") return std::make_unique<SvmModel>(SvmModel::from_json(j));
  if (family == "mlp") return std::make_unique<MlpModel>(MlpModel::from_json(j));
  throw Error(ErrorKind::ParseError, "unknown model family '" + family + "'");
}

}  // namespace aitd
