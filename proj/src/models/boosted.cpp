#include "aitd/models/boosted.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "aitd/error.hpp"
#include "aitd/parallel.hpp"

namespace aitd {

using nlohmann::json;

void to_json(json& j, const BoostedParams& p) {
  j = json{{"n_rounds", p.n_rounds}, {"eta", p.eta},     {"lambda", p.lambda},
           {"gamma", p.gamma},       {"max_depth", p.max_depth}, {"min_child_weight", p.min_child_weight},
           {"seed", p.seed}};
}

void from_json(const json& j, BoostedParams& p) {
  const BoostedParams d;
  p.n_rounds = j.value("n_rounds", d.n_rounds);
  p.eta = j.value("eta", d.eta);
  p.lambda = j.value("lambda", d.lambda);
  p.gamma = j.value("gamma", d.gamma);
  p.max_depth = j.value("max_depth", d.max_depth);
  p.min_child_weight = j.value("min_child_weight", d.min_child_weight);
  p.seed = j.value("seed", d.seed);
  p.threads = j.value("threads", d.threads);
  if (!(p.eta > 0.0)) throw Error(ErrorKind::Configuration, "eta must be > 0");
  if (p.lambda < 0.0 || p.gamma < 0.0) throw Error(ErrorKind::Configuration, "lambda and gamma must be >= 0");
  if (p.max_depth < 0) throw Error(ErrorKind::Configuration, "max_depth must be >= 0");
}

double leaf_weight(double grad_sum, double hess_sum, double lambda) { return -grad_sum / (hess_sum + lambda); }

double split_gain(double gl, double hl, double gr, double hr, double lambda, double gamma) {
  const double g = gl + gr, h = hl + hr;
  return 0.5 * (gl * gl / (hl + lambda) + gr * gr / (hr + lambda) - g * g / (h + lambda)) - gamma;
}

double RegressionTree::value(const SparseVector& x) const {
  std::size_t i = 0;
  while (!nodes[i].is_leaf()) {
    const auto& n = nodes[i];
    i = static_cast<std::size_t>(x.at(static_cast<std::uint32_t>(n.feature)) <= n.threshold ? n.left : n.right);
  }
  return nodes[i].weight;
}

double log_loss(std::span<const int> y, std::span<const double> p) {
  if (y.size() != p.size()) throw Error(ErrorKind::LengthMismatch, "log_loss: label/probability lengths differ");
  if (y.empty()) return 0.0;
  constexpr double eps = 1e-15;
  double sum = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double q = std::clamp(p[i], eps, 1.0 - eps);
    sum -= y[i] == 1 ? std::log(q) : std::log(1.0 - q);
  }
  return sum / static_cast<double>(y.size());
}

BoostedModel::BoostedModel(double base_score, double eta, double lambda, double gamma,
                           std::vector<RegressionTree> rounds, std::size_t n_features)
    : base_score_(base_score), eta_(eta), lambda_(lambda), gamma_(gamma), rounds_(std::move(rounds)),
      n_features_(n_features) {}

double BoostedModel::margin(const SparseVector& x) const {
  double sum = 0.0;
  for (const auto& t : rounds_) sum += t.value(x);
  return base_score_ + eta_ * sum;
}

Prediction BoostedModel::predict_unchecked(const SparseVector& x) const {
  Prediction p;
  p.score = margin(x);
  const double q = sigmoid(p.score);
  p.probabilities = {1.0 - q, q};
  p.label = argmax_label(p.probabilities);
  return p;
}

json BoostedModel::to_json() const {
  json rounds = json::array();
  for (const auto& t : rounds_) {
    json nodes = json::array();
    for (const auto& n : t.nodes) {
      if (n.is_leaf()) {
        nodes.push_back(json{{"w", n.weight}});
      } else {
        nodes.push_back(json{{"f", n.feature}, {"t", n.threshold}, {"l", n.left}, {"r", n.right}, {"w", n.weight}});
      }
    }
    rounds.push_back(std::move(nodes));
  }
  return json{{"family", family()}, {"n_features", n_features_}, {"base_score", base_score_}, {"eta", eta_},
              {"lambda", lambda_},  {"gamma", gamma_},            {"rounds", rounds}};
}

BoostedModel BoostedModel::from_json(const json& j) {
  std::vector<RegressionTree> rounds;
  for (const auto& r : j.at("rounds")) {
    RegressionTree t;
    for (const auto& n : r) {
      RegressionNode node;
      node.weight = n.at("w").get<double>();
      if (n.contains("f")) {
        node.feature = n["f"].get<int>();
        node.threshold = n.at("t").get<double>();
        node.left = n.at("l").get<int>();
        node.right = n.at("r").get<int>();
      }
      t.nodes.push_back(node);
    }
    if (t.nodes.empty()) throw Error(ErrorKind::ParseError, "boosting round without nodes");
    rounds.push_back(std::move(t));
  }
  return BoostedModel(j.at("base_score").get<double>(), j.at("eta").get<double>(), j.at("lambda").get<double>(),
                      j.at("gamma").get<double>(), std::move(rounds), j.at("n_features").get<std::size_t>());
}

namespace {

struct GainChoice {
  bool found = false;
  std::uint32_t feature = 0;
  double threshold = 0.0;
  double gain = 0.0;
};

double midpoint(double lo, double hi) {
  const double mid = lo + (hi - lo) / 2.0;
  return mid < hi ? mid : lo;
}

// Best threshold on one feature for the rows flagged in `in_node`.
GainChoice best_on_feature(const ColumnIndex& columns, std::uint32_t f, const std::vector<char>& in_node,
                           const std::vector<double>& g, const std::vector<double>& h, std::size_t n_node, double G,
                           double H, const BoostedParams& params) {
  GainChoice best;
  best.feature = f;
  double gnz = 0.0, hnz = 0.0;
  std::size_t nz = 0;
  const auto column = columns.column(f);
  for (const auto& e : column) {
    if (e.value != 0.0 && in_node[e.row]) {
      gnz += g[e.row];
      hnz += h[e.row];
      ++nz;
    }
  }
  const double gz = G - gnz, hz = H - hnz;

  double gl = 0.0, hl = 0.0;
  bool have_prev = false;
  double prev = 0.0;
  auto visit = [&](double value) {
    if (!have_prev || value == prev) return;
    const double gr = G - gl, hr = H - hl;
    if (hl < params.min_child_weight || hr < params.min_child_weight) return;
    const double gain = split_gain(gl, hl, gr, hr, params.lambda, params.gamma);
    if (gain > 0.0 && (!best.found || gain > best.gain)) {
      best.found = true;
      best.threshold = midpoint(prev, value);
      best.gain = gain;
    }
  };
  bool zero_done = nz == n_node;
  auto add_zero = [&] {
    visit(0.0);
    gl += gz;
    hl += hz;
    prev = 0.0;
    have_prev = true;
    zero_done = true;
  };
  for (const auto& e : column) {
    if (e.value == 0.0 || !in_node[e.row]) continue;
    if (!zero_done && e.value > 0.0) add_zero();
    visit(e.value);
    gl += g[e.row];
    hl += h[e.row];
    prev = e.value;
    have_prev = true;
  }
  if (!zero_done) add_zero();
  return best;
}

}  // namespace

BoostedModel train_boosted(const Dataset& data, const BoostedParams& params, BoostingTrace* trace) {
  if (data.rows() == 0) throw Error(ErrorKind::EmptyTrainingSet, "boosting needs at least one row");
  if (data.n_classes != 2) throw Error(ErrorKind::NonBinaryLabels, "boosting expects exactly two classes");
  for (int y : data.y) {
    if (y != 0 && y != 1) throw Error(ErrorKind::NonBinaryLabels, "boosting labels must be 0 or 1");
  }
  if (params.n_rounds == 0) throw Error(ErrorKind::Configuration, "n_rounds must be >= 1");
  if (!(params.eta > 0.0)) throw Error(ErrorKind::Configuration, "eta must be > 0");
  if (params.max_depth < 0) throw Error(ErrorKind::Configuration, "max_depth must be >= 0");

  const std::size_t n = data.rows();
  const std::size_t n_features = data.features();
  double positives = 0.0;
  for (int y : data.y) positives += y;
  const double prior = std::clamp(positives / static_cast<double>(n), 1e-6, 1.0 - 1e-6);
  const double base = std::log(prior / (1.0 - prior));

  const ColumnIndex columns(data.X);
  std::vector<double> margin(n, base), g(n), h(n), prob(n);
  std::vector<char> in_node(n, 0);
  std::vector<GainChoice> per_feature(n_features);
  std::vector<RegressionTree> rounds;
  rounds.reserve(params.n_rounds);

  auto record = [&] {
    if (!trace) return;
    for (std::size_t r = 0; r < n; ++r) prob[r] = sigmoid(margin[r]);
    trace->train_log_loss.push_back(log_loss(data.y, prob));
  };
  if (trace) trace->train_log_loss.clear();
  record();

  struct Work {
    int node;
    int depth;
    std::vector<std::uint32_t> rows;
  };

  for (std::size_t round = 0; round < params.n_rounds; ++round) {
    for (std::size_t r = 0; r < n; ++r) {
      const double p = sigmoid(margin[r]);
      g[r] = p - data.y[r];
      h[r] = std::max(p * (1.0 - p), 1e-16);
    }
    RegressionTree tree;
    tree.nodes.resize(1);
    std::vector<Work> stack;
    {
      Work root{0, 0, std::vector<std::uint32_t>(n)};
      for (std::size_t r = 0; r < n; ++r) root.rows[r] = static_cast<std::uint32_t>(r);
      stack.push_back(std::move(root));
    }
    while (!stack.empty()) {
      Work work = std::move(stack.back());
      stack.pop_back();
      double G = 0.0, H = 0.0;
      for (auto r : work.rows) {
        G += g[r];
        H += h[r];
      }
      const double w = leaf_weight(G, H, params.lambda);
      tree.nodes[static_cast<std::size_t>(work.node)].weight = w;

      GainChoice best;
      if (work.depth < params.max_depth && work.rows.size() >= 2) {
        for (auto r : work.rows) in_node[r] = 1;
        parallel_for(n_features, params.threads, [&](std::size_t f) {
          per_feature[f] = best_on_feature(columns, static_cast<std::uint32_t>(f), in_node, g, h, work.rows.size(), G,
                                           H, params);
        });
        for (auto r : work.rows) in_node[r] = 0;
        for (const auto& c : per_feature) {
          if (c.found && (!best.found || c.gain > best.gain)) best = c;
        }
      }
      if (!best.found) {
        for (auto r : work.rows) margin[r] += params.eta * w;
        continue;
      }
      Work left{static_cast<int>(tree.nodes.size()), work.depth + 1, {}};
      Work right{static_cast<int>(tree.nodes.size() + 1), work.depth + 1, {}};
      for (auto r : work.rows) {
        (data.X.at(r, best.feature) <= best.threshold ? left.rows : right.rows).push_back(r);
      }
      auto& node = tree.nodes[static_cast<std::size_t>(work.node)];
      node.feature = static_cast<int>(best.feature);
      node.threshold = best.threshold;
      node.left = left.node;
      node.right = right.node;
      tree.nodes.resize(tree.nodes.size() + 2);
      stack.push_back(std::move(right));
      stack.push_back(std::move(left));
    }
    rounds.push_back(std::move(tree));
    record();
  }
  return BoostedModel(base, params.eta, params.lambda, params.gamma, std::move(rounds), n_features);
}

OneVsRestBoosted::OneVsRestBoosted(std::vector<BoostedModel> per_class) : per_class_(std::move(per_class)) {
  if (per_class_.size() < 2) throw Error(ErrorKind::ParseError, "one-vs-rest needs at least two classes");
}

Prediction OneVsRestBoosted::predict_unchecked(const SparseVector& x) const {
  Prediction p;
  p.probabilities.reserve(per_class_.size());
  double total = 0.0;
  for (const auto& m : per_class_) {
    p.probabilities.push_back(sigmoid(m.margin(x)));
    total += p.probabilities.back();
  }
  for (auto& q : p.probabilities) q /= total;
  p.label = argmax_label(p.probabilities);
  p.score = p.probabilities[static_cast<std::size_t>(p.label)];
  return p;
}

json OneVsRestBoosted::to_json() const {
  json models = json::array();
  for (const auto& m : per_class_) models.push_back(m.to_json());
  return json{{"family", family()}, {"n_features", n_features()}, {"per_class", models}};
}

OneVsRestBoosted OneVsRestBoosted::from_json(const json& j) {
  std::vector<BoostedModel> models;
  for (const auto& m : j.at("per_class")) models.push_back(BoostedModel::from_json(m));
  return OneVsRestBoosted(std::move(models));
}

OneVsRestBoosted train_boosted_ovr(const Dataset& data, const BoostedParams& params) {
  if (data.rows() == 0) throw Error(ErrorKind::EmptyTrainingSet, "boosting needs at least one row");
  if (data.n_classes < 2) throw Error(ErrorKind::Configuration, "one-vs-rest needs at least two classes");
  std::vector<BoostedModel> models;
  for (int c = 0; c < data.n_classes; ++c) {
    Dataset binary{data.X, {}, 2};
    binary.y.reserve(data.rows());
    for (int y : data.y) binary.y.push_back(y == c ? 1 : 0);
    models.push_back(train_boosted(binary, params));
  }
  return OneVsRestBoosted(std::move(models));
}

}  // namespace aitd
