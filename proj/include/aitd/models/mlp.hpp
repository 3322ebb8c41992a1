#pragma once

// One-hidden-layer perceptron: ReLU hidden layer, sigmoid output, trained by
// mini-batch SGD on binary cross-entropy.

#include <cstdint>
#include <vector>

#include "aitd/models/classifier.hpp"

namespace aitd {

struct MlpParams {
  std::size_t hidden_width = 64;
  double lr = 0.05;
  std::size_t epochs = 30;
  std::size_t batch = 32;
  std::uint64_t seed = 0;
};

void to_json(nlohmann::json& j, const MlpParams& p);
void from_json(const nlohmann::json& j, MlpParams& p);

class MlpModel final : public Classifier {
 public:
  MlpModel() = default;
  /// w1 is feature-major: w1[f * hidden + j].
  MlpModel(std::size_t n_features, std::size_t hidden, std::vector<double> w1, std::vector<double> b1,
           std::vector<double> w2, double b2, MlpParams params);

  /// Seeded initialization: weights ~ N(0, 1) / sqrt(fan_in), biases zero.
  static MlpModel initialize(std::size_t n_features, const MlpParams& params);

  std::string family() const override { return "mlp"; }
  std::size_t n_features() const override { return n_features_; }
  int n_classes() const override { return 2; }
  std::size_t hidden() const { return hidden_; }
  const MlpParams& params() const { return params_; }

  /// Output logit.
  double logit(const SparseVector& x) const;

  /// Parameters flattened as [w1, b1, w2, b2].
  std::vector<double> flatten() const;
  std::size_t parameter_count() const { return w1_.size() + b1_.size() + w2_.size() + 1; }
  void assign(std::span<const double> flat);

  /// Mean binary cross-entropy over `rows` of data; fills `grad` (flattened
  /// layout) when non-null.
  double loss_and_gradient(const Dataset& data, std::span<const std::size_t> rows, std::vector<double>* grad) const;

  nlohmann::json to_json() const override;
  static MlpModel from_json(const nlohmann::json& j);

 protected:
  Prediction predict_unchecked(const SparseVector& x) const override;

 private:
  void hidden_pre(std::span<const std::uint32_t> idx, std::span<const double> val, std::vector<double>& z) const;

  std::size_t n_features_ = 0;
  std::size_t hidden_ = 0;
  std::vector<double> w1_, b1_, w2_;
  double b2_ = 0.0;
  MlpParams params_;
};

/// Stable log(1 + e^z) - y z.
double bce_with_logit(double z, int y);

MlpModel train_mlp(const Dataset& data, const MlpParams& params);

}  // namespace aitd
