#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "aitd/models/classifier.hpp"

namespace aitd {

struct ModelSpec {
  /// tree (gain-ratio, J48 stand-in), forest, boosted, svm, mlp
  std::string family;
  nlohmann::json params = nlohmann::json::object();
};

void to_json(nlohmann::json& j, const ModelSpec& m);
void from_json(const nlohmann::json& j, ModelSpec& m);

const std::vector<std::string>& model_families();

/// `seed` and `threads` fill any params left unset. Boosting on
/// more than two classes trains a one-vs-rest ensemble.
std::unique_ptr<Classifier> train_model(const ModelSpec& spec, const Dataset& data, std::uint64_t seed,
                                        unsigned threads = 1);

}  // namespace aitd
