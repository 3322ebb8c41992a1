#pragma once

// Second-order gradient boosting on the logistic loss with exact greedy
// regression trees (XGBoost-style objective).

#include <cstdint>
#include <vector>

#include "aitd/models/classifier.hpp"

namespace aitd {

struct BoostedParams {
  std::size_t n_rounds = 200;
  double eta = 0.1;
  double lambda = 1.0;
  double gamma = 0.0;
  int max_depth = 4;
  /// Minimum hessian sum per child.
  double min_child_weight = 1.0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

void to_json(nlohmann::json& j, const BoostedParams& p);
void from_json(const nlohmann::json& j, BoostedParams& p);

/// w* = -G / (H + lambda)
double leaf_weight(double grad_sum, double hess_sum, double lambda);

/// 1/2 [G_L^2/(H_L+l) + G_R^2/(H_R+l) - (G_L+G_R)^2/(H_L+H_R+l)] - gamma
double split_gain(double grad_left, double hess_left, double grad_right, double hess_right, double lambda,
                  double gamma);

struct RegressionNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double weight = 0.0;

  bool is_leaf() const { return feature < 0; }
};

struct RegressionTree {
  std::vector<RegressionNode> nodes;
  double value(const SparseVector& x) const;
};

/// Binary model: P(class 1) = sigmoid(base_score + eta * sum of leaf weights).
class BoostedModel final : public Classifier {
 public:
  BoostedModel() = default;
  BoostedModel(double base_score, double eta, double lambda, double gamma, std::vector<RegressionTree> rounds,
               std::size_t n_features);

  std::string family() const override { return "boosted"; }
  std::size_t n_features() const override { return n_features_; }
  int n_classes() const override { return 2; }

  double base_score() const { return base_score_; }
  double eta() const { return eta_; }
  const std::vector<RegressionTree>& rounds() const { return rounds_; }
  double margin(const SparseVector& x) const;

  nlohmann::json to_json() const override;
  static BoostedModel from_json(const nlohmann::json& j);

 protected:
  Prediction predict_unchecked(const SparseVector& x) const override;

 private:
  double base_score_ = 0.0;
  double eta_ = 0.1;
  double lambda_ = 1.0;
  double gamma_ = 0.0;
  std::vector<RegressionTree> rounds_;
  std::size_t n_features_ = 0;
};

struct BoostingTrace {
  /// Mean training log-loss before round 1 (index 0) and after each round.
  std::vector<double> train_log_loss;
};

/// Labels must be 0/1 (n_classes == 2). Split search parallelizes over
/// features; the chosen split is the highest gain with ties to the lowest
/// feature index and threshold, independent of the worker count.
BoostedModel train_boosted(const Dataset& data, const BoostedParams& params, BoostingTrace* trace = nullptr);

/// One binary booster per class; probabilities are the per-class sigmoids
/// renormalized to sum to one.
class OneVsRestBoosted final : public Classifier {
 public:
  OneVsRestBoosted() = default;
  explicit OneVsRestBoosted(std::vector<BoostedModel> per_class);

  std::string family() const override { return "boosted_ovr"; }
  std::size_t n_features() const override { return per_class_.front().n_features(); }
  int n_classes() const override { return static_cast<int>(per_class_.size()); }
  const std::vector<BoostedModel>& per_class() const { return per_class_; }

  nlohmann::json to_json() const override;
  static OneVsRestBoosted from_json(const nlohmann::json& j);

 protected:
  Prediction predict_unchecked(const SparseVector& x) const override;

 private:
  std::vector<BoostedModel> per_class_;
};

OneVsRestBoosted train_boosted_ovr(const Dataset& data, const BoostedParams& params);

double log_loss(std::span<const int> y, std::span<const double> p);

}  // namespace aitd
