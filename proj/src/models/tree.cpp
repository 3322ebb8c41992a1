#include "aitd/models/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "aitd/error.hpp"
#include "aitd/rng.hpp"

namespace aitd {

using nlohmann::json;

double gini_impurity(std::span<const double> class_weights) {
  const double total = std::accumulate(class_weights.begin(), class_weights.end(), 0.0);
  if (total <= 0.0) return 0.0;
  double sum_sq = 0.0;
  for (double w : class_weights) sum_sq += (w / total) * (w / total);
  return 1.0 - sum_sq;
}

double entropy_bits(std::span<const double> class_weights) {
  const double total = std::accumulate(class_weights.begin(), class_weights.end(), 0.0);
  if (total <= 0.0) return 0.0;
  double h = 0.0;
  for (double w : class_weights) {
    if (w > 0.0) h -= (w / total) * std::log2(w / total);
  }
  return h;
}

double split_score(std::span<const double> left, std::span<const double> right, SplitCriterion criterion) {
  const double nl = std::accumulate(left.begin(), left.end(), 0.0);
  const double nr = std::accumulate(right.begin(), right.end(), 0.0);
  if (nl <= 0.0 || nr <= 0.0) return -std::numeric_limits<double>::infinity();
  const double n = nl + nr;
  std::vector<double> parent(left.size());
  for (std::size_t c = 0; c < left.size(); ++c) parent[c] = left[c] + right[c];
  const double pl = nl / n, pr = nr / n;
  if (criterion == SplitCriterion::Gini) {
    return gini_impurity(parent) - pl * gini_impurity(left) - pr * gini_impurity(right);
  }
  const double gain = entropy_bits(parent) - pl * entropy_bits(left) - pr * entropy_bits(right);
  const double split_info = std::max(-(pl * std::log2(pl) + pr * std::log2(pr)), 1e-12);
  return gain / split_info;
}

void to_json(json& j, const TreeParams& p) {
  j = json{{"criterion", p.criterion == SplitCriterion::Gini ? "gini" : "gain_ratio"},
           {"max_depth", p.max_depth},
           {"min_samples_leaf", p.min_samples_leaf},
           {"feature_subsample", p.feature_subsample ? json(*p.feature_subsample) : json(nullptr)},
           {"seed", p.seed}};
}

void from_json(const json& j, TreeParams& p) {
  const TreeParams d;
  const auto criterion = j.value("criterion", std::string("gini"));
  if (criterion != "gini" && criterion != "gain_ratio") {
    throw Error(ErrorKind::Configuration, "unknown split criterion '" + criterion + "'");
  }
  p.criterion = criterion == "gini" ? SplitCriterion::Gini : SplitCriterion::GainRatio;
  p.max_depth = j.value("max_depth", d.max_depth);
  p.min_samples_leaf = j.value("min_samples_leaf", d.min_samples_leaf);
  if (j.contains("feature_subsample") && !j["feature_subsample"].is_null()) {
    p.feature_subsample = j["feature_subsample"].get<std::size_t>();
  } else {
    p.feature_subsample.reset();
  }
  p.seed = j.value("seed", d.seed);
}

namespace {

double midpoint(double lo, double hi) {
  const double mid = lo + (hi - lo) / 2.0;
  return mid < hi ? mid : lo;
}

}  // namespace

SplitChoice find_best_split(const Dataset& data, const ColumnIndex& columns, std::span<const double> row_weights,
                            std::span<const std::uint32_t> features, SplitCriterion criterion,
                            double min_samples_leaf) {
  const auto k = static_cast<std::size_t>(data.n_classes);
  std::vector<double> parent(k, 0.0);
  double total = 0.0;
  for (std::size_t r = 0; r < data.rows(); ++r) {
    if (row_weights[r] > 0.0) {
      parent[static_cast<std::size_t>(data.y[r])] += row_weights[r];
      total += row_weights[r];
    }
  }

  SplitChoice best;
  std::vector<double> left(k), right(k), nonzero(k);
  for (const std::uint32_t f : features) {
    const auto column = columns.column(f);
    std::fill(nonzero.begin(), nonzero.end(), 0.0);
    for (const auto& e : column) {
      if (e.value != 0.0 && row_weights[e.row] > 0.0) nonzero[static_cast<std::size_t>(data.y[e.row])] += row_weights[e.row];
    }
    double zero_weight = total;
    for (double w : nonzero) zero_weight -= w;

    std::fill(left.begin(), left.end(), 0.0);
    double left_weight = 0.0;
    bool have_prev = false;
    double prev = 0.0;
    auto visit = [&](double value) {
      if (!have_prev || value == prev) return;
      if (left_weight < min_samples_leaf || total - left_weight < min_samples_leaf) return;
      for (std::size_t c = 0; c < k; ++c) right[c] = parent[c] - left[c];
      const double score = split_score(left, right, criterion);
      if (!best.found || score > best.score) {
        best = SplitChoice{true, f, midpoint(prev, value), score};
      }
    };
    bool zero_done = zero_weight <= 0.0;
    auto add_zero_group = [&] {
      visit(0.0);
      for (std::size_t c = 0; c < k; ++c) left[c] += parent[c] - nonzero[c];
      left_weight += zero_weight;
      prev = 0.0;
      have_prev = true;
      zero_done = true;
    };
    for (const auto& e : column) {
      if (e.value == 0.0 || row_weights[e.row] <= 0.0) continue;
      if (!zero_done && e.value > 0.0) add_zero_group();
      visit(e.value);
      left[static_cast<std::size_t>(data.y[e.row])] += row_weights[e.row];
      left_weight += row_weights[e.row];
      prev = e.value;
      have_prev = true;
    }
    if (!zero_done) add_zero_group();
  }
  return best;
}

DecisionTree::DecisionTree(std::vector<TreeNode> nodes, std::size_t n_features, int n_classes)
    : nodes_(std::move(nodes)), n_features_(n_features), n_classes_(n_classes) {
  if (nodes_.empty()) throw Error(ErrorKind::ParseError, "tree without nodes");
}

int DecisionTree::depth() const {
  std::vector<int> d(nodes_.size(), 0);
  int deepest = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    deepest = std::max(deepest, d[i]);
    if (!nodes_[i].is_leaf()) {
      d[static_cast<std::size_t>(nodes_[i].left)] = d[i] + 1;
      d[static_cast<std::size_t>(nodes_[i].right)] = d[i] + 1;
    }
  }
  return deepest;
}

const std::vector<double>& DecisionTree::leaf_distribution(const SparseVector& x) const {
  std::size_t i = 0;
  while (!nodes_[i].is_leaf()) {
    const auto& n = nodes_[i];
    i = static_cast<std::size_t>(x.at(static_cast<std::uint32_t>(n.feature)) <= n.threshold ? n.left : n.right);
  }
  return nodes_[i].distribution;
}

Prediction DecisionTree::predict_unchecked(const SparseVector& x) const {
  Prediction p;
  p.probabilities = leaf_distribution(x);
  p.label = argmax_label(p.probabilities);
  p.score = p.probabilities.size() > 1 ? p.probabilities[1] : 0.0;
  return p;
}

json DecisionTree::nodes_json() const {
  json out = json::array();
  for (const auto& n : nodes_) {
    if (n.is_leaf()) {
      out.push_back(json{{"dist", n.distribution}});
    } else {
      out.push_back(json{{"f", n.feature}, {"t", n.threshold}, {"l", n.left}, {"r", n.right}, {"dist", n.distribution}});
    }
  }
  return out;
}

json DecisionTree::to_json() const {
  return json{{"family", family()}, {"n_features", n_features_}, {"n_classes", n_classes_}, {"nodes", nodes_json()}};
}

DecisionTree DecisionTree::from_nodes_json(const json& nodes, std::size_t n_features, int n_classes) {
  std::vector<TreeNode> out;
  for (const auto& n : nodes) {
    TreeNode node;
    node.distribution = n.at("dist").get<std::vector<double>>();
    if (n.contains("f")) {
      node.feature = n["f"].get<int>();
      node.threshold = n.at("t").get<double>();
      node.left = n.at("l").get<int>();
      node.right = n.at("r").get<int>();
    }
    out.push_back(std::move(node));
  }
  return DecisionTree(std::move(out), n_features, n_classes);
}

DecisionTree DecisionTree::from_json(const json& j) {
  return from_nodes_json(j.at("nodes"), j.at("n_features").get<std::size_t>(), j.at("n_classes").get<int>());
}

namespace {

// Floyd's sampling of `k` distinct features, returned ascending.
std::vector<std::uint32_t> sample_features(std::size_t n_features, std::size_t k, Rng& rng) {
  std::vector<std::uint32_t> chosen;
  chosen.reserve(k);
  std::vector<bool> taken(n_features, false);
  for (std::size_t j = n_features - k; j < n_features; ++j) {
    auto t = static_cast<std::uint32_t>(rng.below(j + 1));
    if (taken[t]) t = static_cast<std::uint32_t>(j);
    taken[t] = true;
    chosen.push_back(t);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace

DecisionTree train_tree(const Dataset& data, const ColumnIndex& columns, std::span<const double> row_weights,
                        const TreeParams& params) {
  if (data.rows() == 0) throw Error(ErrorKind::EmptyTrainingSet, "tree needs at least one row");
  if (params.max_depth < 0) throw Error(ErrorKind::Configuration, "max_depth must be >= 0");
  if (params.feature_subsample && *params.feature_subsample == 0) {
    throw Error(ErrorKind::Configuration, "feature_subsample must be >= 1");
  }
  const auto k = static_cast<std::size_t>(data.n_classes);
  const std::size_t n_features = data.features();

  std::vector<std::uint32_t> all_features(n_features);
  std::iota(all_features.begin(), all_features.end(), 0u);
  const bool subsample = params.feature_subsample && *params.feature_subsample < n_features;
  Rng rng(params.seed);

  struct Work {
    int node;
    int depth;
    std::vector<std::uint32_t> rows;
  };
  std::vector<TreeNode> nodes(1);
  std::vector<Work> stack;
  {
    Work root{0, 0, {}};
    for (std::size_t r = 0; r < data.rows(); ++r) {
      if (row_weights[r] > 0.0) root.rows.push_back(static_cast<std::uint32_t>(r));
    }
    if (root.rows.empty()) throw Error(ErrorKind::EmptyTrainingSet, "all row weights are zero");
    stack.push_back(std::move(root));
  }

  std::vector<double> node_weights(data.rows(), 0.0);
  while (!stack.empty()) {
    Work work = std::move(stack.back());
    stack.pop_back();

    std::vector<double> counts(k, 0.0);
    double total = 0.0;
    for (auto r : work.rows) {
      counts[static_cast<std::size_t>(data.y[r])] += row_weights[r];
      total += row_weights[r];
    }
    TreeNode& node = nodes[static_cast<std::size_t>(work.node)];
    node.distribution.resize(k);
    for (std::size_t c = 0; c < k; ++c) node.distribution[c] = counts[c] / total;

    const bool pure = std::count_if(counts.begin(), counts.end(), [](double w) { return w > 0.0; }) <= 1;
    if (pure || work.depth >= params.max_depth || total < 2.0 * params.min_samples_leaf) continue;

    const auto features = subsample ? sample_features(n_features, *params.feature_subsample, rng) : all_features;
    for (auto r : work.rows) node_weights[r] = row_weights[r];
    const SplitChoice choice =
        find_best_split(data, columns, node_weights, features, params.criterion, params.min_samples_leaf);
    for (auto r : work.rows) node_weights[r] = 0.0;
    if (!choice.found) continue;

    Work left{static_cast<int>(nodes.size()), work.depth + 1, {}};
    Work right{static_cast<int>(nodes.size() + 1), work.depth + 1, {}};
    for (auto r : work.rows) {
      (data.X.at(r, choice.feature) <= choice.threshold ? left.rows : right.rows).push_back(r);
    }
    node.feature = static_cast<int>(choice.feature);
    node.threshold = choice.threshold;
    node.left = left.node;
    node.right = right.node;
    nodes.resize(nodes.size() + 2);
    stack.push_back(std::move(right));
    stack.push_back(std::move(left));
  }
  return DecisionTree(std::move(nodes), n_features, data.n_classes);
}

DecisionTree train_tree(const Dataset& data, const TreeParams& params) {
  if (data.rows() == 0) throw Error(ErrorKind::EmptyTrainingSet, "tree needs at least one row");
  const ColumnIndex columns(data.X);
  const std::vector<double> weights(data.rows(), 1.0);
  return train_tree(data, columns, weights, params);
}

}  // namespace aitd
