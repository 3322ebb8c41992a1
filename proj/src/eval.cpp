#include "aitd/eval.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "aitd/error.hpp"

namespace aitd {

using nlohmann::json;

std::size_t ConfusionMatrix::total() const {
  std::size_t t = unrecognized_total();
  for (const auto& row : counts) t += std::accumulate(row.begin(), row.end(), std::size_t{0});
  return t;
}

std::size_t ConfusionMatrix::unrecognized_total() const {
  return std::accumulate(unrecognized.begin(), unrecognized.end(), std::size_t{0});
}

std::size_t ConfusionMatrix::row_total(std::size_t actual) const {
  return std::accumulate(counts[actual].begin(), counts[actual].end(), std::size_t{0}) + unrecognized[actual];
}

std::size_t ConfusionMatrix::column_total(std::size_t predicted) const {
  std::size_t t = 0;
  for (const auto& row : counts) t += row[predicted];
  return t;
}

ConfusionMatrix confusion(std::span<const int> y_true, std::span<const int> y_pred,
                          const std::vector<std::string>& classes) {
  if (y_true.size() != y_pred.size()) throw Error(ErrorKind::LengthMismatch, "y_true and y_pred lengths differ");
  const auto k = static_cast<int>(classes.size());
  ConfusionMatrix cm;
  cm.classes = classes;
  cm.counts.assign(classes.size(), std::vector<std::size_t>(classes.size(), 0));
  cm.unrecognized.assign(classes.size(), 0);
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const int t = y_true[i], p = y_pred[i];
    if (t < 0 || t >= k) throw Error(ErrorKind::UnknownTrueLabel, "true label " + std::to_string(t) + " not in classes");
    if (p == kUnrecognized) {
      ++cm.unrecognized[static_cast<std::size_t>(t)];
    } else if (p < 0 || p >= k) {
      throw Error(ErrorKind::UnknownLabel, "predicted label " + std::to_string(p) + " not in classes");
    } else {
      ++cm.counts[static_cast<std::size_t>(t)][static_cast<std::size_t>(p)];
    }
  }
  return cm;
}

MetricsReport metrics(const ConfusionMatrix& cm) {
  MetricsReport r;
  r.total = cm.total();
  if (r.total == 0) throw Error(ErrorKind::EmptyMatrix, "confusion matrix has no entries");
  r.unrecognized_total = cm.unrecognized_total();
  const std::size_t k = cm.classes.size();
  std::size_t diagonal = 0;
  for (std::size_t c = 0; c < k; ++c) diagonal += cm.counts[c][c];
  r.accuracy = static_cast<double>(diagonal) / static_cast<double>(r.total);
  for (std::size_t c = 0; c < k; ++c) {
    ClassMetrics m;
    m.name = cm.classes[c];
    m.support = cm.row_total(c);
    const std::size_t col = cm.column_total(c);
    const auto tp = static_cast<double>(cm.counts[c][c]);
    m.precision = col ? tp / static_cast<double>(col) : 0.0;
    m.recall = m.support ? tp / static_cast<double>(m.support) : 0.0;
    m.f1 = m.precision + m.recall > 0.0 ? 2.0 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
    r.macro.precision += m.precision / static_cast<double>(k);
    r.macro.recall += m.recall / static_cast<double>(k);
    r.macro.f1 += m.f1 / static_cast<double>(k);
    const double share = static_cast<double>(m.support) / static_cast<double>(r.total);
    r.weighted.precision += m.precision * share;
    r.weighted.recall += m.recall * share;
    r.weighted.f1 += m.f1 * share;
    r.per_class.push_back(std::move(m));
  }
  return r;
}

RocCurve roc(std::span<const int> y_true, std::span<const double> scores) {
  if (y_true.size() != scores.size()) throw Error(ErrorKind::LengthMismatch, "labels and scores lengths differ");
  std::size_t pos = 0, neg = 0;
  for (int y : y_true) {
    if (y == 1) {
      ++pos;
    } else if (y == 0) {
      ++neg;
    } else {
      throw Error(ErrorKind::UnknownTrueLabel, "roc expects labels 0/1");
    }
  }
  if (pos == 0 || neg == 0) throw Error(ErrorKind::SingleClassInput, "roc needs both classes present");
  std::vector<std::size_t> order(y_true.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  RocCurve curve;
  curve.points.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});
  std::size_t tp = 0, fp = 0;
  for (std::size_t i = 0; i < order.size();) {
    const double s = scores[order[i]];
    while (i < order.size() && scores[order[i]] == s) {
      (y_true[order[i]] == 1 ? tp : fp) += 1;
      ++i;
    }
    curve.points.push_back({static_cast<double>(fp) / static_cast<double>(neg),
                            static_cast<double>(tp) / static_cast<double>(pos), s});
  }
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    const auto& a = curve.points[i - 1];
    const auto& b = curve.points[i];
    curve.auc += (b.fpr - a.fpr) * (a.tpr + b.tpr) / 2.0;
  }
  return curve;
}

json to_json(const ConfusionMatrix& cm) {
  return json{{"classes", cm.classes}, {"counts", cm.counts}, {"unrecognized", cm.unrecognized}, {"total", cm.total()}};
}

json to_json(const MetricsReport& r) {
  json per_class = json::array();
  for (const auto& m : r.per_class) {
    per_class.push_back(
        {{"class", m.name}, {"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}, {"support", m.support}});
  }
  auto avg = [](const AveragedMetrics& a) {
    return json{{"precision", a.precision}, {"recall", a.recall}, {"f1", a.f1}};
  };
  return json{{"accuracy", r.accuracy},         {"per_class", per_class},
              {"macro", avg(r.macro)},          {"weighted", avg(r.weighted)},
              {"total", r.total},               {"unrecognized_total", r.unrecognized_total}};
}

json to_json(const RocCurve& curve) {
  json fpr = json::array(), tpr = json::array();
  for (const auto& p : curve.points) {
    fpr.push_back(p.fpr);
    tpr.push_back(p.tpr);
  }
  return json{{"fpr", fpr}, {"tpr", tpr}, {"auc", curve.auc}};
}

}  // namespace aitd
