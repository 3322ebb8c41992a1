#include <gtest/gtest.h>

#include "aitd/corpus.hpp"
#include "aitd/error.hpp"
#include "aitd/eval.hpp"
#include "aitd/rng.hpp"
#include "oracles.hpp"

using namespace aitd;

namespace {

void fill(std::vector<int>& y, std::vector<int>& p, int actual, const std::vector<std::size_t>& row, std::size_t unrec) {
  for (std::size_t c = 0; c < row.size(); ++c) {
    for (std::size_t k = 0; k < row[c]; ++k) y.push_back(actual), p.push_back(static_cast<int>(c));
  }
  for (std::size_t k = 0; k < unrec; ++k) y.push_back(actual), p.push_back(kUnrecognized);
}

ConfusionMatrix conservative_matrix() {
  std::vector<int> y, p;
  fill(y, p, 0, {3, 56, 0}, 7);
  fill(y, p, 1, {0, 76, 0}, 0);
  fill(y, p, 2, {0, 15, 18}, 25);
  return confusion(y, p, class_names(Task::ThreeClass));
}

}  // namespace

TEST(Confusion, PerfectPredictions) {
  std::vector<int> y{0, 1, 0, 1, 1, 0, 0, 1, 1, 0};
  const auto cm = confusion(y, y, {"a", "b"});
  EXPECT_EQ(cm.counts[0][0] + cm.counts[1][1], 10u);
  EXPECT_EQ(cm.counts[0][1] + cm.counts[1][0], 0u);
}

TEST(Confusion, ConservativeMatrixTotalsAndAccuracy) {
  const auto cm = conservative_matrix();
  EXPECT_EQ(cm.total(), 200u);
  EXPECT_EQ(cm.unrecognized_total(), 32u);
  const auto m = metrics(cm);
  EXPECT_NEAR(m.accuracy, 0.485, 1e-12);
  // Unrecognized never enter a precision column.
  EXPECT_NEAR(m.per_class[1].precision, 76.0 / (56 + 76 + 15), 1e-12);
  EXPECT_NEAR(m.per_class[0].recall, 3.0 / 66, 1e-12);
}

TEST(Confusion, BalancedMatrixAccuracy) {
  std::vector<int> y, p;
  fill(y, p, 0, {48, 18, 0}, 0);
  fill(y, p, 1, {7, 55, 5}, 0);
  fill(y, p, 2, {0, 15, 52}, 0);
  EXPECT_NEAR(metrics(confusion(y, p, class_names(Task::ThreeClass))).accuracy, 0.775, 1e-12);
}

TEST(Confusion, AllUnrecognized) {
  const std::vector<int> y{0, 1, 1}, p(3, kUnrecognized);
  const auto cm = confusion(y, p, {"a", "b"});
  EXPECT_EQ(cm.unrecognized_total(), 3u);
  for (const auto& row : cm.counts) {
    for (auto v : row) EXPECT_EQ(v, 0u);
  }
  EXPECT_DOUBLE_EQ(metrics(cm).accuracy, 0.0);
}

TEST(Confusion, Errors) {
  const std::vector<int> y{0, 1}, p{0};
  EXPECT_THROW(confusion(y, p, {"a", "b"}), Error);
  const std::vector<int> bad{0, 5};
  EXPECT_THROW(confusion(bad, y, {"a", "b"}), Error);
  EXPECT_THROW(confusion(y, bad, {"a", "b"}), Error);
  EXPECT_THROW(metrics(confusion({}, {}, {"a", "b"})), Error);
}

TEST(Metrics, MacroAndWeighted) {
  std::vector<int> y, p;
  fill(y, p, 0, {8, 2}, 0);
  fill(y, p, 1, {1, 1}, 0);
  const auto m = metrics(confusion(y, p, {"a", "b"}));
  const double f1a = 2 * (8.0 / 9) * 0.8 / (8.0 / 9 + 0.8), f1b = 2 * (1.0 / 3) * 0.5 / (1.0 / 3 + 0.5);
  EXPECT_NEAR(m.macro.f1, (f1a + f1b) / 2, 1e-12);
  EXPECT_NEAR(m.weighted.f1, (10 * f1a + 2 * f1b) / 12, 1e-12);
}

TEST(Roc, HandExample) {
  const std::vector<int> y{1, 1, 0, 0};
  const std::vector<double> s{0.9, 0.4, 0.6, 0.1};
  EXPECT_NEAR(roc(y, s).auc, 0.75, 1e-12);
}

TEST(Roc, PerfectAndInverted) {
  const std::vector<int> y{0, 0, 1, 1};
  EXPECT_DOUBLE_EQ(roc(y, std::vector<double>{0.1, 0.2, 0.8, 0.9}).auc, 1.0);
  EXPECT_DOUBLE_EQ(roc(y, std::vector<double>{0.9, 0.8, 0.2, 0.1}).auc, 0.0);
}

TEST(Roc, MatchesMannWhitneyWithTies) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    Rng rng(s);
    std::vector<int> y(40);
    std::vector<double> sc(40);
    for (std::size_t i = 0; i < 40; ++i) {
      y[i] = static_cast<int>(rng.below(2));
      sc[i] = static_cast<double>(rng.below(8)) / 8.0;
    }
    y[0] = 0;
    y[1] = 1;
    EXPECT_NEAR(roc(y, sc).auc, oracle::mann_whitney_auc(y, sc), 1e-12);
  }
}

TEST(Roc, SingleClassRejected) {
  const std::vector<int> y{1, 1};
  EXPECT_THROW(roc(y, std::vector<double>{0.1, 0.2}), Error);
}
