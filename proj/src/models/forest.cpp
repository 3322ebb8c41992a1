#include "aitd/models/forest.hpp"

#include <cmath>

#include "aitd/error.hpp"
#include "aitd/parallel.hpp"
#include "aitd/rng.hpp"

namespace aitd {

using nlohmann::json;

void to_json(json& j, const ForestParams& p) {
  j = json{{"n_trees", p.n_trees},       {"max_depth", p.max_depth}, {"min_samples_leaf", p.min_samples_leaf},
           {"max_features", p.max_features}, {"bootstrap", p.bootstrap}, {"seed", p.seed}};
}

void from_json(const json& j, ForestParams& p) {
  const ForestParams d;
  p.n_trees = j.value("n_trees", d.n_trees);
  p.max_depth = j.value("max_depth", d.max_depth);
  p.min_samples_leaf = j.value("min_samples_leaf", d.min_samples_leaf);
  p.max_features = j.value("max_features", d.max_features);
  p.bootstrap = j.value("bootstrap", d.bootstrap);
  p.seed = j.value("seed", d.seed);
  p.threads = j.value("threads", d.threads);
}

std::size_t resolve_max_features(const std::string& rule, std::size_t n_features) {
  if (rule == "sqrt") return static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n_features))));
  if (rule == "all") return n_features;
  try {
    const auto k = std::stoul(rule);
    if (k == 0) throw Error(ErrorKind::Configuration, "max_features must be positive");
    return std::min<std::size_t>(k, n_features);
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::Configuration, "max_features must be 'sqrt', 'all' or an integer, got '" + rule + "'");
  }
}

ForestModel::ForestModel(std::vector<DecisionTree> trees, std::vector<std::uint64_t> tree_seeds,
                         std::string max_features, std::size_t n_features, int n_classes)
    : trees_(std::move(trees)),
      tree_seeds_(std::move(tree_seeds)),
      max_features_(std::move(max_features)),
      n_features_(n_features),
      n_classes_(n_classes) {
  if (trees_.empty()) throw Error(ErrorKind::Configuration, "forest needs at least one tree");
}

Prediction ForestModel::predict_unchecked(const SparseVector& x) const {
  Prediction p;
  p.probabilities.assign(static_cast<std::size_t>(n_classes_), 0.0);
  for (const auto& tree : trees_) {
    const auto& dist = tree.leaf_distribution(x);
    for (std::size_t c = 0; c < dist.size(); ++c) p.probabilities[c] += dist[c];
  }
  for (auto& v : p.probabilities) v /= static_cast<double>(trees_.size());
  p.label = argmax_label(p.probabilities);
  p.score = n_classes_ > 1 ? p.probabilities[1] : 0.0;
  return p;
}

json ForestModel::to_json() const {
  json trees = json::array();
  for (const auto& t : trees_) trees.push_back(t.nodes_json());
  return json{{"family", family()},         {"n_features", n_features_}, {"n_classes", n_classes_},
              {"max_features", max_features_}, {"tree_seeds", tree_seeds_}, {"trees", trees}};
}

ForestModel ForestModel::from_json(const json& j) {
  const auto n_features = j.at("n_features").get<std::size_t>();
  const auto n_classes = j.at("n_classes").get<int>();
  std::vector<DecisionTree> trees;
  for (const auto& t : j.at("trees")) trees.push_back(DecisionTree::from_nodes_json(t, n_features, n_classes));
  return ForestModel(std::move(trees), j.at("tree_seeds").get<std::vector<std::uint64_t>>(),
                     j.at("max_features").get<std::string>(), n_features, n_classes);
}

ForestModel train_forest(const Dataset& data, const ForestParams& params) {
  if (params.n_trees == 0) throw Error(ErrorKind::Configuration, "n_trees must be at least 1");
  if (data.rows() == 0) throw Error(ErrorKind::EmptyTrainingSet, "forest needs at least one row");
  const std::size_t k = resolve_max_features(params.max_features, data.features());
  const ColumnIndex columns(data.X);

  std::vector<std::uint64_t> seeds(params.n_trees);
  for (std::size_t t = 0; t < params.n_trees; ++t) seeds[t] = derive_seed(params.seed, t);

  std::vector<DecisionTree> trees(params.n_trees);
  parallel_for(params.n_trees, params.threads, [&](std::size_t t) {
    Rng rng(seeds[t]);
    std::vector<double> weights(data.rows(), params.bootstrap ? 0.0 : 1.0);
    if (params.bootstrap) {
      for (std::size_t i = 0; i < data.rows(); ++i) weights[rng.below(data.rows())] += 1.0;
    }
    TreeParams tp;
    tp.criterion = SplitCriterion::Gini;
    tp.max_depth = params.max_depth;
    tp.min_samples_leaf = params.min_samples_leaf;
    if (k < data.features()) tp.feature_subsample = k;
    tp.seed = rng.next();
    trees[t] = train_tree(data, columns, weights, tp);
  });
  return ForestModel(std::move(trees), std::move(seeds), params.max_features, data.features(), data.n_classes);
}

}  // namespace aitd
