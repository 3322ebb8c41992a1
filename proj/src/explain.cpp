#include "aitd/explain.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "aitd/error.hpp"
#include "aitd/parallel.hpp"
#include "aitd/rng.hpp"

namespace aitd {

using nlohmann::json;

namespace {

// In-place Cholesky solve of the SPD system A x = b (A is d x d row-major).
std::vector<double> cholesky_solve(std::vector<double> A, std::vector<double> b, std::size_t d) {
  for (std::size_t j = 0; j < d; ++j) {
    double diag = A[j * d + j];
    for (std::size_t k = 0; k < j; ++k) diag -= A[j * d + k] * A[j * d + k];
    if (!(diag > 0.0)) throw Error(ErrorKind::Configuration, "ridge system is not positive definite");
    const double l = std::sqrt(diag);
    A[j * d + j] = l;
    for (std::size_t i = j + 1; i < d; ++i) {
      double s = A[i * d + j];
      for (std::size_t k = 0; k < j; ++k) s -= A[i * d + k] * A[j * d + k];
      A[i * d + j] = s / l;
    }
  }
  for (std::size_t i = 0; i < d; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= A[i * d + k] * b[k];
    b[i] = s / A[i * d + i];
  }
  for (std::size_t i = d; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < d; ++k) s -= A[k * d + i] * b[k];
    b[i] = s / A[i * d + i];
  }
  return b;
}

}  // namespace

RidgeResult weighted_ridge(std::span<const double> X, std::size_t n, std::size_t d, std::span<const double> y,
                           std::span<const double> w, double alpha) {
  if (X.size() != n * d || y.size() != n || w.size() != n) {
    throw Error(ErrorKind::LengthMismatch, "weighted_ridge: shapes disagree");
  }
  if (!(alpha > 0.0)) throw Error(ErrorKind::Configuration, "ridge alpha must be > 0");
  double wsum = 0.0;
  for (double v : w) wsum += v;
  if (!(wsum > 0.0)) throw Error(ErrorKind::Configuration, "ridge weights sum to zero");

  std::vector<double> xbar(d, 0.0);
  double ybar = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ybar += w[i] * y[i];
    for (std::size_t j = 0; j < d; ++j) xbar[j] += w[i] * X[i * d + j];
  }
  ybar /= wsum;
  for (auto& v : xbar) v /= wsum;

  std::vector<double> A(d * d, 0.0), b(d, 0.0), xc(d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) xc[j] = X[i * d + j] - xbar[j];
    const double yc = y[i] - ybar;
    for (std::size_t j = 0; j < d; ++j) {
      const double wx = w[i] * xc[j];
      b[j] += wx * yc;
      for (std::size_t k = 0; k <= j; ++k) A[j * d + k] += wx * xc[k];
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    A[j * d + j] += alpha;
    for (std::size_t k = 0; k < j; ++k) A[k * d + j] = A[j * d + k];
  }
  RidgeResult r;
  r.coef = d ? cholesky_solve(std::move(A), std::move(b), d) : std::vector<double>{};
  r.intercept = ybar;
  for (std::size_t j = 0; j < d; ++j) r.intercept -= xbar[j] * r.coef[j];
  return r;
}

double lime_kernel(double distance, double width) { return std::exp(-(distance * distance) / (width * width)); }

double mask_distance(std::size_t kept, std::size_t d) {
  if (kept == 0 || d == 0) return 1.0;
  return 1.0 - std::sqrt(static_cast<double>(kept) / static_cast<double>(d));
}

void to_json(json& j, const LimeParams& p) {
  j = json{{"n_samples", p.n_samples},
           {"kernel_width", p.kernel_width ? json(*p.kernel_width) : json(nullptr)},
           {"k", p.k},
           {"seed", p.seed},
           {"ridge_alpha", p.ridge_alpha},
           {"target_class", p.target_class ? json(*p.target_class) : json(nullptr)}};
}

void from_json(const json& j, LimeParams& p) {
  const LimeParams d;
  p.n_samples = j.value("n_samples", d.n_samples);
  p.k = j.value("k", d.k);
  p.seed = j.value("seed", d.seed);
  p.ridge_alpha = j.value("ridge_alpha", d.ridge_alpha);
  p.kernel_width.reset();
  if (j.contains("kernel_width") && !j["kernel_width"].is_null()) p.kernel_width = j["kernel_width"].get<double>();
  p.target_class.reset();
  if (j.contains("target_class") && !j["target_class"].is_null()) p.target_class = j["target_class"].get<int>();
  if (p.n_samples < 1) throw Error(ErrorKind::Configuration, "n_samples must be >= 1");
}

PerturbationSample perturb(const Classifier& model, const TokenSeq& instance, const TfidfModel& tfidf,
                           const LimeParams& params, int target_class) {
  if (instance.empty()) throw Error(ErrorKind::EmptyInstance, "nothing to explain: instance has no tokens");
  if (model.n_features() != tfidf.dimension()) {
    throw Error(ErrorKind::DimensionMismatch, "model and vectorizer feature spaces differ");
  }
  if (params.n_samples < 1) throw Error(ErrorKind::Configuration, "n_samples must be >= 1");
  PerturbationSample s;
  s.tokens = instance;
  std::sort(s.tokens.begin(), s.tokens.end());
  s.tokens.erase(std::unique(s.tokens.begin(), s.tokens.end()), s.tokens.end());
  const std::size_t d = s.tokens.size(), n = params.n_samples;
  std::map<std::string, std::size_t> position;
  for (std::size_t j = 0; j < d; ++j) position.emplace(s.tokens[j], j);
  std::vector<std::size_t> slot(instance.size());
  for (std::size_t i = 0; i < instance.size(); ++i) slot[i] = position.at(instance[i]);

  s.masks.assign(n * d, 1);
  Rng rng(params.seed);
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t j = 0; j < d; ++j) s.masks[r * d + j] = rng.bernoulli(0.5) ? 1 : 0;
  }
  const double width = params.kernel_width.value_or(0.25 * std::sqrt(static_cast<double>(d)));
  s.probabilities.resize(n);
  s.kernel_weights.resize(n);
  parallel_for(n, params.threads, [&](std::size_t r) {
    const std::uint8_t* mask = s.masks.data() + r * d;
    TokenSeq kept;
    kept.reserve(instance.size());
    for (std::size_t i = 0; i < instance.size(); ++i) {
      if (mask[slot[i]]) kept.push_back(instance[i]);
    }
    std::size_t on = 0;
    for (std::size_t j = 0; j < d; ++j) on += mask[j];
    s.probabilities[r] = model.predict(tfidf.transform(kept)).probabilities.at(static_cast<std::size_t>(target_class));
    s.kernel_weights[r] = lime_kernel(mask_distance(on, d), width);
  });
  return s;
}

Explanation lime_explain(const Classifier& model, const TokenSeq& instance, const TfidfModel& tfidf,
                         const LimeParams& params, const std::string& instance_id) {
  if (instance.empty()) throw Error(ErrorKind::EmptyInstance, "nothing to explain: instance has no tokens");
  if (model.n_features() != tfidf.dimension()) {
    throw Error(ErrorKind::DimensionMismatch, "model and vectorizer feature spaces differ");
  }
  Explanation e;
  e.instance_id = instance_id;
  const Prediction original = model.predict(tfidf.transform(instance));
  e.predicted_label = original.label;
  e.predicted_probability = original.probabilities[static_cast<std::size_t>(original.label)];
  e.target_class = params.target_class.value_or(model.n_classes() == 2 ? 1 : original.label);
  if (e.target_class < 0 || e.target_class >= model.n_classes()) {
    throw Error(ErrorKind::Configuration, "target class out of range");
  }
  e.target_probability = original.probabilities[static_cast<std::size_t>(e.target_class)];

  const PerturbationSample s = perturb(model, instance, tfidf, params, e.target_class);
  const std::size_t d = s.tokens.size(), n = params.n_samples;
  const bool constant = std::all_of(s.probabilities.begin(), s.probabilities.end(),
                                    [&](double p) { return p == s.probabilities[0]; });
  std::vector<double> coef(d, 0.0);
  if (constant) {
    e.degenerate = true;
    e.intercept = s.probabilities[0];
    e.local_fidelity = 1.0;
  } else {
    std::vector<double> X(n * d);
    for (std::size_t i = 0; i < n * d; ++i) X[i] = s.masks[i];
    const RidgeResult fit = weighted_ridge(X, n, d, s.probabilities, s.kernel_weights, params.ridge_alpha);
    coef = fit.coef;
    e.intercept = fit.intercept;
    double wsum = 0.0, ybar = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      wsum += s.kernel_weights[r];
      ybar += s.kernel_weights[r] * s.probabilities[r];
    }
    ybar /= wsum;
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      double pred = fit.intercept;
      for (std::size_t j = 0; j < d; ++j) pred += X[r * d + j] * coef[j];
      ss_res += s.kernel_weights[r] * (s.probabilities[r] - pred) * (s.probabilities[r] - pred);
      ss_tot += s.kernel_weights[r] * (s.probabilities[r] - ybar) * (s.probabilities[r] - ybar);
    }
    e.local_fidelity = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  }
  for (std::size_t j = 0; j < d; ++j) e.all_weights.emplace_back(s.tokens[j], coef[j]);
  e.feature_weights = e.all_weights;
  std::stable_sort(e.feature_weights.begin(), e.feature_weights.end(),
                   [](const auto& a, const auto& b) { return std::abs(a.second) > std::abs(b.second); });
  if (e.feature_weights.size() > params.k) e.feature_weights.resize(params.k);
  return e;
}

GlobalImportance aggregate_importance(std::span<const Explanation> explanations,
                                      const std::vector<std::string>& class_names, std::size_t top_k) {
  GlobalImportance g;
  for (std::size_t c = 0; c < class_names.size(); ++c) {
    ClassImportance ci;
    ci.class_index = static_cast<int>(c);
    ci.class_name = class_names[c];
    std::map<std::string, double> sums;
    for (const auto& e : explanations) {
      if (e.predicted_label != static_cast<int>(c)) continue;
      ++ci.instances;
      for (const auto& [token, w] : e.all_weights) sums[token] += w;
    }
    for (const auto& [token, sum] : sums) ci.tokens.emplace_back(token, sum / static_cast<double>(ci.instances));
    std::stable_sort(ci.tokens.begin(), ci.tokens.end(),
                     [](const auto& a, const auto& b) { return std::abs(a.second) > std::abs(b.second); });
    if (ci.tokens.size() > top_k) ci.tokens.resize(top_k);
    g.classes.push_back(std::move(ci));
  }
  return g;
}

GlobalImportance global_importance(const Classifier& model, std::span<const TokenSeq> instances,
                                   const TfidfModel& tfidf, const LimeParams& params,
                                   const std::vector<std::string>& class_names, std::size_t top_k,
                                   std::vector<Explanation>* explanations) {
  if (instances.empty()) throw Error(ErrorKind::EmptyCorpus, "no instances to explain");
  std::vector<Explanation> local(instances.size());
  LimeParams inner = params;
  inner.threads = 1;
  parallel_for(instances.size(), params.threads, [&](std::size_t i) {
    LimeParams p = inner;
    p.seed = derive_seed(params.seed, i);
    local[i] = lime_explain(model, instances[i], tfidf, p, std::to_string(i));
  });
  GlobalImportance g = aggregate_importance(local, class_names, top_k);
  if (explanations) *explanations = std::move(local);
  return g;
}

json to_json(const Explanation& e) {
  auto pairs = [](const std::vector<TokenWeight>& v) {
    json out = json::array();
    for (const auto& [t, w] : v) out.push_back({{"token", t}, {"weight", w}});
    return out;
  };
  return json{{"instance_id", e.instance_id},
              {"predicted_label", e.predicted_label},
              {"predicted_probability", e.predicted_probability},
              {"target_class", e.target_class},
              {"target_probability", e.target_probability},
              {"feature_weights", pairs(e.feature_weights)},
              {"intercept", e.intercept},
              {"local_fidelity", e.local_fidelity},
              {"degenerate", e.degenerate}};
}

json to_json(const GlobalImportance& g) {
  json out = json::array();
  for (const auto& c : g.classes) {
    json tokens = json::array();
    for (const auto& [t, w] : c.tokens) tokens.push_back({{"token", t}, {"weight", w}});
    out.push_back({{"class", c.class_name}, {"instances", c.instances}, {"tokens", tokens}});
  }
  return out;
}

std::string render_bars(const std::vector<TokenWeight>& weights, std::size_t width) {
  double peak = 0.0;
  std::size_t label = 5;
  for (const auto& [t, w] : weights) {
    peak = std::max(peak, std::abs(w));
    label = std::max(label, t.size());
  }
  std::string out;
  for (const auto& [t, w] : weights) {
    const auto len = peak > 0.0 ? static_cast<std::size_t>(std::lround(std::abs(w) / peak * static_cast<double>(width))) : 0;
    const std::string bar(len, w < 0 ? '-' : '+');
    const std::string pad(width - len, ' ');
    out += w < 0 ? fmt::format("{:<{}} {:>{}}|{} {:+.4f}\n", t, label, bar, width, std::string(width, ' '), w)
                 : fmt::format("{:<{}} {}|{}{} {:+.4f}\n", t, label, std::string(width, ' '), bar, pad, w);
  }
  return out;
}

}  // namespace aitd
