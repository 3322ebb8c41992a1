#pragma once

// Linear SVM trained by primal stochastic subgradient descent (Pegasos),
// with a logistic (Platt) map from margin to probability.

#include <cstdint>
#include <vector>

#include "aitd/models/classifier.hpp"

namespace aitd {

struct SvmParams {
  double lambda = 1e-4;
  std::size_t epochs = 50;
  std::uint64_t seed = 0;
};

void to_json(nlohmann::json& j, const SvmParams& p);
void from_json(const nlohmann::json& j, SvmParams& p);

struct PlattCalibration {
  double a = 1.0;
  double b = 0.0;
};

/// Fits sigma(a*s + b) to labels in {0,1} by regularized Newton steps on the
/// log-loss with smoothed targets (N+ + 1)/(N+ + 2) and 1/(N- + 2).
PlattCalibration fit_platt(std::span<const double> scores, std::span<const int> labels);

class SvmModel final : public Classifier {
 public:
  SvmModel() = default;
  SvmModel(std::vector<double> weights, double bias, PlattCalibration platt, SvmParams params);

  std::string family() const override { return "svm"; }
  std::size_t n_features() const override { return weights_.size(); }
  int n_classes() const override { return 2; }

  const std::vector<double>& weights() const { return weights_; }
  double bias() const { return bias_; }
  const PlattCalibration& platt() const { return platt_; }
  const SvmParams& params() const { return params_; }
  /// w.x + b
  double decision(const SparseVector& x) const;

  nlohmann::json to_json() const override;
  static SvmModel from_json(const nlohmann::json& j);

 protected:
  Prediction predict_unchecked(const SparseVector& x) const override;

 private:
  std::vector<double> weights_;
  double bias_ = 0.0;
  PlattCalibration platt_;
  SvmParams params_;
};

/// lambda/2 (|w|^2 + b^2) + mean hinge(y * (w.x + b)), labels 0/1 mapped to -1/+1.
/// The bias is trained as a constant feature and is therefore regularized too.
double svm_objective(std::span<const double> weights, double bias, const Dataset& data, double lambda);

SvmModel train_svm(const Dataset& data, const SvmParams& params);

}  // namespace aitd
