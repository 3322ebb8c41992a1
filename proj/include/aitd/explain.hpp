#pragma once

// Local surrogate explanations over token-presence masks, and per-class
// aggregation of the local weights.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "aitd/features.hpp"
#include "aitd/models/classifier.hpp"

namespace aitd {

struct RidgeResult {
  std::vector<double> coef;
  double intercept = 0.0;
};

/// Minimizes sum_i w_i (y_i - b - x_i.beta)^2 + alpha |beta|^2 (intercept not
/// penalized). X is row-major n x d.
RidgeResult weighted_ridge(std::span<const double> X, std::size_t n, std::size_t d, std::span<const double> y,
                           std::span<const double> w, double alpha);

/// exp(-distance^2 / width^2)
double lime_kernel(double distance, double width);

/// Cosine distance between a mask with `kept` ones and the all-ones mask of length d.
double mask_distance(std::size_t kept, std::size_t d);

struct LimeParams {
  std::size_t n_samples = 1000;
  std::optional<double> kernel_width;
  std::size_t k = 10;
  std::uint64_t seed = 0;
  double ridge_alpha = 1.0;
  unsigned threads = 1;
  /// Class whose probability is explained; default: class 1 for binary
  /// models, the predicted class otherwise.
  std::optional<int> target_class;
};

void to_json(nlohmann::json& j, const LimeParams& p);
void from_json(const nlohmann::json& j, LimeParams& p);

using TokenWeight = std::pair<std::string, double>;

struct Explanation {
  std::string instance_id;
  int predicted_label = 0;
  double predicted_probability = 0.0;
  int target_class = 1;
  double target_probability = 0.0;
  /// Top-k by |weight| (ties: token order).
  std::vector<TokenWeight> feature_weights;
  /// Every distinct token, sorted by token.
  std::vector<TokenWeight> all_weights;
  double intercept = 0.0;
  double local_fidelity = 0.0;
  /// The model answered the same probability for every mask.
  bool degenerate = false;
};

struct PerturbationSample {
  std::vector<std::string> tokens;
  /// n_samples x d, row-major; row 0 all ones.
  std::vector<std::uint8_t> masks;
  std::vector<double> probabilities;
  std::vector<double> kernel_weights;
};

PerturbationSample perturb(const Classifier& model, const TokenSeq& instance, const TfidfModel& tfidf,
                           const LimeParams& params, int target_class);

Explanation lime_explain(const Classifier& model, const TokenSeq& instance, const TfidfModel& tfidf,
                         const LimeParams& params, const std::string& instance_id = "");

struct ClassImportance {
  int class_index = 0;
  std::string class_name;
  std::size_t instances = 0;
  std::vector<TokenWeight> tokens;
};

struct GlobalImportance {
  std::vector<ClassImportance> classes;
};

/// Explains every instance (seed derived per instance), groups by predicted
/// class and averages each token's signed weight over the group (a token
/// absent from an instance contributes 0). Top `top_k` tokens by |mean|.
GlobalImportance global_importance(const Classifier& model, std::span<const TokenSeq> instances,
                                   const TfidfModel& tfidf, const LimeParams& params,
                                   const std::vector<std::string>& class_names, std::size_t top_k = 10,
                                   std::vector<Explanation>* explanations = nullptr);

/// Aggregation step alone, over already computed explanations.
GlobalImportance aggregate_importance(std::span<const Explanation> explanations,
                                      const std::vector<std::string>& class_names, std::size_t top_k = 10);

nlohmann::json to_json(const Explanation& e);
nlohmann::json to_json(const GlobalImportance& g);

/// Signed horizontal text bars, one line per token.
std::string render_bars(const std::vector<TokenWeight>& weights, std::size_t width = 30);

}  // namespace aitd
