#include "aitd/models/svm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "aitd/error.hpp"
#include "aitd/rng.hpp"
#include "aitd/simd/kernels.hpp"

namespace aitd {

using nlohmann::json;

void to_json(json& j, const SvmParams& p) { j = json{{"lambda", p.lambda}, {"epochs", p.epochs}, {"seed", p.seed}}; }

void from_json(const json& j, SvmParams& p) {
  const SvmParams d;
  p.lambda = j.value("lambda", d.lambda);
  p.epochs = j.value("epochs", d.epochs);
  p.seed = j.value("seed", d.seed);
  if (!(p.lambda > 0.0)) throw Error(ErrorKind::Configuration, "svm lambda must be > 0");
}

PlattCalibration fit_platt(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw Error(ErrorKind::LengthMismatch, "platt: scores/labels lengths differ");
  const std::size_t n = scores.size();
  double pos = 0.0;
  for (int y : labels) pos += y == 1;
  const double neg = static_cast<double>(n) - pos;
  const double hi = (pos + 1.0) / (pos + 2.0), lo = 1.0 / (neg + 2.0);
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = labels[i] == 1 ? hi : lo;

  double a = 0.0, b = std::log((pos + 1.0) / (neg + 1.0));
  auto loss = [&](double aa, double bb) {
    double f = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double z = aa * scores[i] + bb;
      // -t log sigma(z) - (1-t) log(1 - sigma(z)), stable form
      f += (z >= 0 ? std::log1p(std::exp(-z)) + (1.0 - t[i]) * z : std::log1p(std::exp(z)) - t[i] * z);
    }
    return f;
  };
  double f = loss(a, b);
  constexpr double ridge = 1e-12;
  for (int iter = 0; iter < 100; ++iter) {
    double h11 = ridge, h22 = ridge, h21 = 0.0, g1 = 0.0, g2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double p = sigmoid(a * scores[i] + b);
      const double d1 = p - t[i], d2 = p * (1.0 - p);
      g1 += scores[i] * d1;
      g2 += d1;
      h11 += scores[i] * scores[i] * d2;
      h22 += d2;
      h21 += scores[i] * d2;
    }
    if (std::abs(g1) < 1e-10 && std::abs(g2) < 1e-10) break;
    const double det = h11 * h22 - h21 * h21;
    if (!(det > 0.0)) break;
    const double da = -(h22 * g1 - h21 * g2) / det;
    const double db = -(-h21 * g1 + h11 * g2) / det;
    const double gd = g1 * da + g2 * db;
    double step = 1.0;
    bool moved = false;
    while (step >= 1e-10) {
      const double fa = loss(a + step * da, b + step * db);
      if (fa < f + 1e-4 * step * gd) {
        a += step * da;
        b += step * db;
        f = fa;
        moved = true;
        break;
      }
      step /= 2.0;
    }
    if (!moved) break;
  }
  return {a, b};
}

SvmModel::SvmModel(std::vector<double> weights, double bias, PlattCalibration platt, SvmParams params)
    : weights_(std::move(weights)), bias_(bias), platt_(platt), params_(params) {
  for (double w : weights_) {
    if (!std::isfinite(w)) throw Error(ErrorKind::NonFiniteLoss, "svm weight is not finite");
  }
}

double SvmModel::decision(const SparseVector& x) const {
  return simd::sparse_dot(x.indices, x.values, weights_) + bias_;
}

Prediction SvmModel::predict_unchecked(const SparseVector& x) const {
  Prediction p;
  p.score = decision(x);
  const double q = sigmoid(platt_.a * p.score + platt_.b);
  p.probabilities = {1.0 - q, q};
  p.label = argmax_label(p.probabilities);
  return p;
}

json SvmModel::to_json() const {
  return json{{"family", family()},   {"weights", weights_}, {"bias", bias_},
              {"platt_a", platt_.a},  {"platt_b", platt_.b}, {"params", params_}};
}

SvmModel SvmModel::from_json(const json& j) {
  return SvmModel(j.at("weights").get<std::vector<double>>(), j.at("bias").get<double>(),
                  {j.at("platt_a").get<double>(), j.at("platt_b").get<double>()}, j.at("params").get<SvmParams>());
}

namespace {

void check_binary(const Dataset& data) {
  if (data.rows() == 0) throw Error(ErrorKind::EmptyTrainingSet, "svm needs at least one row");
  if (data.n_classes != 2) throw Error(ErrorKind::NonBinaryLabels, "svm expects exactly two classes");
  for (int y : data.y) {
    if (y != 0 && y != 1) throw Error(ErrorKind::NonBinaryLabels, "svm labels must be 0 or 1");
  }
}

}  // namespace

double svm_objective(std::span<const double> weights, double bias, const Dataset& data, double lambda) {
  if (weights.size() != data.features()) throw Error(ErrorKind::DimensionMismatch, "svm weights vs features");
  double hinge = 0.0;
  for (std::size_t r = 0; r < data.rows(); ++r) {
    const auto row = data.X.row(r);
    double s = bias;
    for (std::size_t k = 0; k < row.indices.size(); ++k) s += row.values[k] * weights[row.indices[k]];
    const double y = data.y[r] == 1 ? 1.0 : -1.0;
    hinge += std::max(0.0, 1.0 - y * s);
  }
  double sq = bias * bias;
  for (double w : weights) sq += w * w;
  return 0.5 * lambda * sq + hinge / static_cast<double>(data.rows());
}

SvmModel train_svm(const Dataset& data, const SvmParams& params) {
  check_binary(data);
  if (!(params.lambda > 0.0)) throw Error(ErrorKind::Configuration, "svm lambda must be > 0");
  const std::size_t n = data.rows(), dim = data.features();
  // Last coordinate is the bias (constant feature 1).
  std::vector<double> w(dim + 1, 0.0);
  const std::span<double> body(w.data(), dim);
  const double radius_sq = 1.0 / params.lambda;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(params.seed);

  std::vector<double> best = w;
  double best_objective = svm_objective(body, 0.0, data, params.lambda);
  std::uint64_t t = 0;
  for (std::size_t epoch = 0; epoch < params.epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t r : order) {
      ++t;
      const double eta = 1.0 / (params.lambda * static_cast<double>(t));
      const auto row = data.X.row(r);
      const double y = data.y[r] == 1 ? 1.0 : -1.0;
      const double s = simd::sparse_dot(row.indices, row.values, w) + w[dim];
      simd::scale(1.0 - eta * params.lambda, w);
      if (y * s < 1.0) {
        for (std::size_t k = 0; k < row.indices.size(); ++k) w[row.indices[k]] += eta * y * row.values[k];
        w[dim] += eta * y;
      }
      const double norm_sq = simd::sum_squares(w);
      if (norm_sq > radius_sq) simd::scale(std::sqrt(radius_sq / norm_sq), w);
    }
    // Keep the best epoch-end iterate; the last Pegasos iterate can be noisy.
    const double objective = svm_objective(body, w[dim], data, params.lambda);
    if (objective < best_objective || epoch == 0) {
      best_objective = objective;
      best = w;
    }
  }
  const double bias = best[dim];
  best.pop_back();

  std::vector<double> scores(n);
  for (std::size_t r = 0; r < n; ++r) {
    const auto row = data.X.row(r);
    scores[r] = simd::sparse_dot(row.indices, row.values, best) + bias;
  }
  return SvmModel(std::move(best), bias, fit_platt(scores, data.y), params);
}

}  // namespace aitd
