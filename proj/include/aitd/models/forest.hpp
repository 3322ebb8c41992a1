#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aitd/models/tree.hpp"

namespace aitd {

struct ForestParams {
  std::size_t n_trees = 100;
  int max_depth = 12;
  double min_samples_leaf = 1.0;
  /// "sqrt" (ceil(sqrt(V)) per node), "all", or a positive integer as text.
  std::string max_features = "sqrt";
  bool bootstrap = true;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

void to_json(nlohmann::json& j, const ForestParams& p);
void from_json(const nlohmann::json& j, ForestParams& p);

/// Gini trees on bootstrap resamples; prediction averages leaf distributions.
class ForestModel final : public Classifier {
 public:
  ForestModel() = default;
  ForestModel(std::vector<DecisionTree> trees, std::vector<std::uint64_t> tree_seeds, std::string max_features,
              std::size_t n_features, int n_classes);

  std::string family() const override { return "forest"; }
  std::size_t n_features() const override { return n_features_; }
  int n_classes() const override { return n_classes_; }

  const std::vector<DecisionTree>& trees() const { return trees_; }
  const std::vector<std::uint64_t>& tree_seeds() const { return tree_seeds_; }

  nlohmann::json to_json() const override;
  static ForestModel from_json(const nlohmann::json& j);

 protected:
  Prediction predict_unchecked(const SparseVector& x) const override;

 private:
  std::vector<DecisionTree> trees_;
  std::vector<std::uint64_t> tree_seeds_;
  std::string max_features_;
  std::size_t n_features_ = 0;
  int n_classes_ = 2;
};

std::size_t resolve_max_features(const std::string& rule, std::size_t n_features);

/// Tree t uses seed derive_seed(seed, t) for its bootstrap and node feature
/// draws, so the result does not depend on the worker count.
ForestModel train_forest(const Dataset& data, const ForestParams& params);

}  // namespace aitd
