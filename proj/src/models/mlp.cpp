#include "aitd/models/mlp.hpp"

#include <cmath>
#include <numeric>

#include "aitd/error.hpp"
#include "aitd/rng.hpp"
#include "aitd/simd/kernels.hpp"

namespace aitd {

using nlohmann::json;

void to_json(json& j, const MlpParams& p) {
  j = json{{"hidden_width", p.hidden_width}, {"lr", p.lr}, {"epochs", p.epochs}, {"batch", p.batch}, {"seed", p.seed}};
}

void from_json(const json& j, MlpParams& p) {
  const MlpParams d;
  p.hidden_width = j.value("hidden_width", d.hidden_width);
  p.lr = j.value("lr", d.lr);
  p.epochs = j.value("epochs", d.epochs);
  p.batch = j.value("batch", d.batch);
  p.seed = j.value("seed", d.seed);
}

double bce_with_logit(double z, int y) {
  const double softplus = z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
  return softplus - (y == 1 ? z : 0.0);
}

MlpModel::MlpModel(std::size_t n_features, std::size_t hidden, std::vector<double> w1, std::vector<double> b1,
                   std::vector<double> w2, double b2, MlpParams params)
    : n_features_(n_features), hidden_(hidden), w1_(std::move(w1)), b1_(std::move(b1)), w2_(std::move(w2)), b2_(b2),
      params_(params) {
  if (hidden_ == 0) throw Error(ErrorKind::Configuration, "hidden width must be >= 1");
  if (w1_.size() != n_features_ * hidden_ || b1_.size() != hidden_ || w2_.size() != hidden_) {
    throw Error(ErrorKind::DimensionMismatch, "mlp parameter shapes do not match");
  }
}

MlpModel MlpModel::initialize(std::size_t n_features, const MlpParams& params) {
  if (params.hidden_width == 0) throw Error(ErrorKind::Configuration, "hidden width must be >= 1");
  const std::size_t h = params.hidden_width;
  Rng rng(params.seed);
  std::vector<double> w1(n_features * h), w2(h);
  const double s1 = 1.0 / std::sqrt(static_cast<double>(std::max<std::size_t>(n_features, 1)));
  const double s2 = 1.0 / std::sqrt(static_cast<double>(h));
  for (auto& w : w1) w = rng.normal() * s1;
  for (auto& w : w2) w = rng.normal() * s2;
  return MlpModel(n_features, h, std::move(w1), std::vector<double>(h, 0.0), std::move(w2), 0.0, params);
}

void MlpModel::hidden_pre(std::span<const std::uint32_t> idx, std::span<const double> val,
                          std::vector<double>& z) const {
  z = b1_;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    simd::axpy(val[k], std::span<const double>(w1_.data() + std::size_t{idx[k]} * hidden_, hidden_), z);
  }
}

double MlpModel::logit(const SparseVector& x) const {
  std::vector<double> z;
  hidden_pre(x.indices, x.values, z);
  for (auto& v : z) v = v > 0.0 ? v : 0.0;
  return simd::dot(z, w2_) + b2_;
}

Prediction MlpModel::predict_unchecked(const SparseVector& x) const {
  Prediction p;
  p.score = logit(x);
  const double q = sigmoid(p.score);
  p.probabilities = {1.0 - q, q};
  p.label = argmax_label(p.probabilities);
  return p;
}

std::vector<double> MlpModel::flatten() const {
  std::vector<double> flat;
  flat.reserve(parameter_count());
  flat.insert(flat.end(), w1_.begin(), w1_.end());
  flat.insert(flat.end(), b1_.begin(), b1_.end());
  flat.insert(flat.end(), w2_.begin(), w2_.end());
  flat.push_back(b2_);
  return flat;
}

void MlpModel::assign(std::span<const double> flat) {
  if (flat.size() != parameter_count()) throw Error(ErrorKind::DimensionMismatch, "mlp flat parameter length");
  auto it = flat.begin();
  std::copy(it, it + static_cast<std::ptrdiff_t>(w1_.size()), w1_.begin());
  it += static_cast<std::ptrdiff_t>(w1_.size());
  std::copy(it, it + static_cast<std::ptrdiff_t>(hidden_), b1_.begin());
  it += static_cast<std::ptrdiff_t>(hidden_);
  std::copy(it, it + static_cast<std::ptrdiff_t>(hidden_), w2_.begin());
  it += static_cast<std::ptrdiff_t>(hidden_);
  b2_ = *it;
}

double MlpModel::loss_and_gradient(const Dataset& data, std::span<const std::size_t> rows,
                                   std::vector<double>* grad) const {
  if (rows.empty()) throw Error(ErrorKind::EmptyTrainingSet, "empty batch");
  if (data.features() != n_features_) throw Error(ErrorKind::DimensionMismatch, "mlp batch feature space");
  const std::size_t h = hidden_;
  const std::size_t off_b1 = w1_.size(), off_w2 = off_b1 + h, off_b2 = off_w2 + h;
  if (grad) grad->assign(parameter_count(), 0.0);
  const double inv = 1.0 / static_cast<double>(rows.size());
  double loss = 0.0;
  std::vector<double> z, a(h), delta(h);
  for (std::size_t r : rows) {
    const auto row = data.X.row(r);
    hidden_pre(row.indices, row.values, z);
    for (std::size_t j = 0; j < h; ++j) a[j] = z[j] > 0.0 ? z[j] : 0.0;
    const double out = simd::dot(a, w2_) + b2_;
    loss += bce_with_logit(out, data.y[r]);
    if (!grad) continue;
    const double d_out = (sigmoid(out) - (data.y[r] == 1 ? 1.0 : 0.0)) * inv;
    auto& g = *grad;
    g[off_b2] += d_out;
    for (std::size_t j = 0; j < h; ++j) {
      g[off_w2 + j] += d_out * a[j];
      delta[j] = z[j] > 0.0 ? d_out * w2_[j] : 0.0;
      g[off_b1 + j] += delta[j];
    }
    for (std::size_t k = 0; k < row.indices.size(); ++k) {
      simd::axpy(row.values[k], delta, std::span<double>(g.data() + std::size_t{row.indices[k]} * h, h));
    }
  }
  return loss * inv;
}

json MlpModel::to_json() const {
  return json{{"family", family()}, {"n_features", n_features_}, {"hidden", hidden_}, {"w1", w1_},
              {"b1", b1_},          {"w2", w2_},                 {"b2", b2_},         {"params", params_}};
}

MlpModel MlpModel::from_json(const json& j) {
  return MlpModel(j.at("n_features").get<std::size_t>(), j.at("hidden").get<std::size_t>(),
                  j.at("w1").get<std::vector<double>>(), j.at("b1").get<std::vector<double>>(),
                  j.at("w2").get<std::vector<double>>(), j.at("b2").get<double>(), j.at("params").get<MlpParams>());
}

MlpModel train_mlp(const Dataset& data, const MlpParams& params) {
  if (data.rows() == 0) throw Error(ErrorKind::EmptyTrainingSet, "mlp needs at least one row");
  if (data.n_classes != 2) throw Error(ErrorKind::NonBinaryLabels, "mlp expects exactly two classes");
  for (int y : data.y) {
    if (y != 0 && y != 1) throw Error(ErrorKind::NonBinaryLabels, "mlp labels must be 0 or 1");
  }
  if (params.batch == 0) throw Error(ErrorKind::Configuration, "batch must be >= 1");
  MlpModel model = MlpModel::initialize(data.features(), params);
  std::vector<double> flat = model.flatten(), grad;
  std::vector<std::size_t> order(data.rows());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(derive_seed(params.seed, 1));
  for (std::size_t epoch = 0; epoch < params.epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t start = 0; start < order.size(); start += params.batch) {
      const std::size_t end = std::min(order.size(), start + params.batch);
      const double loss = model.loss_and_gradient(data, std::span(order).subspan(start, end - start), &grad);
      if (!std::isfinite(loss)) throw Error(ErrorKind::NonFiniteLoss, "mlp loss diverged at epoch " + std::to_string(epoch));
      simd::axpy(-params.lr, grad, flat);
      model.assign(flat);
    }
  }
  return model;
}

}  // namespace aitd
