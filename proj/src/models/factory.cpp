#include "aitd/models/factory.hpp"

#include <algorithm>

#include "aitd/error.hpp"
#include "aitd/models/boosted.hpp"
#include "aitd/models/forest.hpp"
#include "aitd/models/mlp.hpp"
#include "aitd/models/svm.hpp"
#include "aitd/models/tree.hpp"

namespace aitd {

using nlohmann::json;

void to_json(json& j, const ModelSpec& m) { j = json{{"family", m.family}, {"params", m.params}}; }

void from_json(const json& j, ModelSpec& m) {
  m.family = j.at("family").get<std::string>();
  m.params = j.value("params", json::object());
}

const std::vector<std::string>& model_families() {
  static const std::vector<std::string> families{"tree", "forest", "boosted", "svm", "mlp"};
  return families;
}

std::unique_ptr<Classifier> train_model(const ModelSpec& spec, const Dataset& data, std::uint64_t seed,
                                        unsigned threads) {
  const auto& families = model_families();
  if (std::find(families.begin(), families.end(), spec.family) == families.end()) {
    throw Error(ErrorKind::Configuration, "unknown model family '" + spec.family + "'");
  }
  json p = spec.params.is_null() ? json::object() : spec.params;
  if (!p.is_object()) throw Error(ErrorKind::Configuration, "model params must be an object");
  if (!p.contains("seed")) p["seed"] = seed;
  try {
    if (spec.family == "tree") {
      if (!p.contains("criterion")) p["criterion"] = "gain_ratio";
      return std::make_unique<DecisionTree>(train_tree(data, p.get<TreeParams>()));
    }
    if (!p.contains("threads") && (spec.family == "forest" || spec.family == "boosted")) p["threads"] = threads;
    if (spec.family == "forest") return std::make_unique<ForestModel>(train_forest(data, p.get<ForestParams>()));
    if (spec.family == "boosted") {
      const auto params = p.get<BoostedParams>();
      if (data.n_classes > 2) return std::make_unique<OneVsRestBoosted>(train_boosted_ovr(data, params));
      return std::make_unique<BoostedModel>(train_boosted(data, params));
    }
    if (spec.family == "svm") return std::make_unique<SvmModel>(train_svm(data, p.get<SvmParams>()));
    return std::make_unique<MlpModel>(train_mlp(data, p.get<MlpParams>()));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Configuration, spec.family + " params: " + e.what());
  }
}

}  // namespace aitd
