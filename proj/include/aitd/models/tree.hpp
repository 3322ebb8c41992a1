#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "aitd/models/classifier.hpp"

namespace aitd {

/// Gini for forest trees; GainRatio is the C4.5-style criterion of the
/// single-tree (J48-like) model.
enum class SplitCriterion { Gini, GainRatio };

double gini_impurity(std::span<const double> class_weights);
double entropy_bits(std::span<const double> class_weights);

/// Gini: weighted impurity decrease. GainRatio: information gain / split
/// information (floored at 1e-12). -infinity when either side is empty.
double split_score(std::span<const double> left, std::span<const double> right, SplitCriterion criterion);

struct TreeParams {
  SplitCriterion criterion = SplitCriterion::Gini;
  int max_depth = 12;
  double min_samples_leaf = 1.0;
  /// Features examined per node, drawn without replacement; all when unset.
  std::optional<std::size_t> feature_subsample;
  std::uint64_t seed = 0;
};

void to_json(nlohmann::json& j, const TreeParams& p);
void from_json(const nlohmann::json& j, TreeParams& p);

/// Internal when feature >= 0 (x[feature] <= threshold goes left), leaf otherwise.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  std::vector<double> distribution;

  bool is_leaf() const { return feature < 0; }
};

struct SplitChoice {
  bool found = false;
  std::uint32_t feature = 0;
  double threshold = 0.0;
  double score = 0.0;
};

/// Exact search over `features` (ascending) for rows with positive weight.
/// Candidate thresholds are midpoints between consecutive distinct values;
/// equal scores keep the lowest feature, then the lowest threshold.
SplitChoice find_best_split(const Dataset& data, const ColumnIndex& columns, std::span<const double> row_weights,
                            std::span<const std::uint32_t> features, SplitCriterion criterion,
                            double min_samples_leaf = 1.0);

class DecisionTree final : public Classifier {
 public:
  DecisionTree() = default;
  DecisionTree(std::vector<TreeNode> nodes, std::size_t n_features, int n_classes);

  std::string family() const override { return "tree"; }
  std::size_t n_features() const override { return n_features_; }
  int n_classes() const override { return n_classes_; }

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const TreeNode& root() const { return nodes_.front(); }
  int depth() const;
  const std::vector<double>& leaf_distribution(const SparseVector& x) const;

  nlohmann::json to_json() const override;
  nlohmann::json nodes_json() const;
  static DecisionTree from_json(const nlohmann::json& j);
  static DecisionTree from_nodes_json(const nlohmann::json& nodes, std::size_t n_features, int n_classes);

 protected:
  Prediction predict_unchecked(const SparseVector& x) const override;

 private:
  std::vector<TreeNode> nodes_;
  std::size_t n_features_ = 0;
  int n_classes_ = 2;
};

DecisionTree train_tree(const Dataset& data, const TreeParams& params);

/// Weighted variant (bootstrap multiplicities); rows with weight 0 are absent.
DecisionTree train_tree(const Dataset& data, const ColumnIndex& columns, std::span<const double> row_weights,
                        const TreeParams& params);

}  // namespace aitd
