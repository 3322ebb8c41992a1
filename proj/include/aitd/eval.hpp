#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace aitd {

/// Prediction value for an input the detector declined to classify.
inline constexpr int kUnrecognized = -1;

struct ConfusionMatrix {
  std::vector<std::string> classes;
  /// counts[actual][predicted]
  std::vector<std::vector<std::size_t>> counts;
  /// Declined inputs per actual class.
  std::vector<std::size_t> unrecognized;

  std::size_t total() const;
  std::size_t unrecognized_total() const;
  std::size_t row_total(std::size_t actual) const;
  std::size_t column_total(std::size_t predicted) const;
};

/// y_pred entries are class indices or kUnrecognized.
ConfusionMatrix confusion(std::span<const int> y_true, std::span<const int> y_pred,
                          const std::vector<std::string>& classes);

struct ClassMetrics {
  std::string name;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  /// Row total including unrecognized inputs.
  std::size_t support = 0;
};

struct AveragedMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct MetricsReport {
  double accuracy = 0.0;
  std::vector<ClassMetrics> per_class;
  AveragedMetrics macro;
  AveragedMetrics weighted;
  std::size_t total = 0;
  std::size_t unrecognized_total = 0;
};

/// Unrecognized inputs stay in the accuracy denominator and in recall, never
/// in a precision column.
MetricsReport metrics(const ConfusionMatrix& cm);

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  /// Score threshold reaching this point (+inf for the origin).
  double threshold = 0.0;
};

struct RocCurve {
  std::vector<RocPoint> points;
  double auc = 0.0;
};

/// y_true in {0,1} with 1 as the positive class; higher score = more positive.
RocCurve roc(std::span<const int> y_true, std::span<const double> scores);

nlohmann::json to_json(const ConfusionMatrix& cm);
nlohmann::json to_json(const MetricsReport& report);
nlohmann::json to_json(const RocCurve& curve);

}  // namespace aitd
