#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "aitd/error.hpp"
#include "aitd/explain.hpp"
#include "aitd/rng.hpp"
#include "oracles.hpp"

using namespace aitd;
using nlohmann::json;

namespace {

class FnModel final : public Classifier {
 public:
  FnModel(std::size_t n, std::function<double(const SparseVector&)> f) : n_(n), f_(std::move(f)) {}
  std::string family() const override { return "fn"; }
  std::size_t n_features() const override { return n_; }
  int n_classes() const override { return 2; }
  json to_json() const override { return json::object(); }

 protected:
  Prediction predict_unchecked(const SparseVector& x) const override {
    const double p = f_(x);
    return Prediction{p >= 0.5 ? 1 : 0, {1 - p, p}, p};
  }

 private:
  std::size_t n_;
  std::function<double(const SparseVector&)> f_;
};

const std::vector<TokenSeq> kDocs{{"realm", "employ", "use", "allow"}, {"use", "system", "data"},
                                  {"realm", "system"}};

}  // namespace

TEST(Lime, KernelAtZeroIsOne) { EXPECT_EQ(lime_kernel(0.0, 0.5), 1.0); }

TEST(Lime, MaskDistance) {
  EXPECT_DOUBLE_EQ(mask_distance(4, 4), 0.0);
  EXPECT_DOUBLE_EQ(mask_distance(0, 4), 1.0);
  EXPECT_NEAR(mask_distance(1, 4), 0.5, 1e-15);
}

TEST(Lime, RidgeMatchesNormalEquations) {
  for (std::uint64_t s = 0; s < 25; ++s) {
    Rng rng(s);
    const std::size_t d = 1 + rng.below(8), n = 20;
    std::vector<double> X(n * d), y(n), w(n);
    for (auto& v : X) v = rng.bernoulli(0.5);
    for (auto& v : y) v = rng.uniform();
    for (auto& v : w) v = rng.uniform(0.1, 1.0);
    const auto a = weighted_ridge(X, n, d, y, w, 1.0);
    const auto b = oracle::normal_equations(X, n, d, y, w, 1.0);
    for (std::size_t j = 0; j < d; ++j) EXPECT_NEAR(a.coef[j], b.coef[j], 1e-8);
    EXPECT_NEAR(a.intercept, b.intercept, 1e-8);
  }
}

TEST(Lime, ConstantModelIsDegenerate) {
  const auto tfidf = TfidfModel::fit(kDocs);
  const FnModel m(tfidf.dimension(), [](const SparseVector&) { return 0.7; });
  const auto e = lime_explain(m, kDocs[0], tfidf, LimeParams{});
  EXPECT_TRUE(e.degenerate);
  EXPECT_NEAR(e.intercept, 0.7, 1e-12);
  for (const auto& [t, w] : e.all_weights) EXPECT_EQ(w, 0.0);
}

TEST(Lime, IndicatorTokenDominates) {
  const auto tfidf = TfidfModel::fit(kDocs);
  const auto realm = *tfidf.vocabulary().index_of("realm");
  const FnModel m(tfidf.dimension(), [realm](const SparseVector& x) { return x.at(realm) > 0 ? 0.9 : 0.1; });
  LimeParams p;
  p.seed = 3;
  const auto e = lime_explain(m, kDocs[0], tfidf, p, "doc");
  ASSERT_FALSE(e.feature_weights.empty());
  EXPECT_EQ(e.feature_weights.front().first, "realm");
  EXPECT_GT(e.feature_weights.front().second, 0.0);
  for (std::size_t i = 1; i < e.feature_weights.size(); ++i) {
    EXPECT_LT(std::fabs(e.feature_weights[i].second), e.feature_weights.front().second);
  }
  EXPECT_EQ(e.instance_id, "doc");
}

TEST(Lime, DeterministicAndThreadIndependent) {
  const auto tfidf = TfidfModel::fit(kDocs);
  const FnModel m(tfidf.dimension(), [](const SparseVector& x) { return 1.0 / (1.0 + std::exp(-double(x.nnz()) + 2)); });
  LimeParams p;
  p.seed = 5;
  const auto a = to_json(lime_explain(m, kDocs[0], tfidf, p));
  p.threads = 3;
  EXPECT_EQ(to_json(lime_explain(m, kDocs[0], tfidf, p)), a);
}

TEST(Lime, EmptyInstanceRejected) {
  const auto tfidf = TfidfModel::fit(kDocs);
  const FnModel m(tfidf.dimension(), [](const SparseVector&) { return 0.5; });
  try {
    lime_explain(m, {}, tfidf, LimeParams{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyInstance);
  }
}

TEST(Lime, PerturbationFirstRowIsOriginal) {
  const auto tfidf = TfidfModel::fit(kDocs);
  const FnModel m(tfidf.dimension(), [](const SparseVector&) { return 0.5; });
  LimeParams p;
  p.n_samples = 50;
  const auto s = perturb(m, kDocs[0], tfidf, p, 1);
  ASSERT_EQ(s.tokens.size(), 4u);
  for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(s.masks[j], 1);
  EXPECT_EQ(s.kernel_weights[0], 1.0);
}

TEST(GlobalImportance, SingleInstanceEqualsLocal) {
  const auto tfidf = TfidfModel::fit(kDocs);
  const auto realm = *tfidf.vocabulary().index_of("realm");
  const FnModel m(tfidf.dimension(), [realm](const SparseVector& x) { return x.at(realm) > 0 ? 0.9 : 0.1; });
  LimeParams p;
  std::vector<TokenSeq> one{kDocs[0]};
  std::vector<Explanation> ex;
  const auto g = global_importance(m, one, tfidf, p, {"chatgpt", "human"}, 10, &ex);
  ASSERT_EQ(ex.size(), 1u);
  const auto& cls = g.classes[static_cast<std::size_t>(ex[0].predicted_label)];
  EXPECT_EQ(cls.instances, 1u);
  for (const auto& [tok, w] : cls.tokens) {
    const auto it = std::find_if(ex[0].all_weights.begin(), ex[0].all_weights.end(),
                                 [&](const TokenWeight& t) { return t.first == tok; });
    ASSERT_NE(it, ex[0].all_weights.end());
    EXPECT_NEAR(it->second, w, 1e-12);
  }
}

TEST(GlobalImportance, OppositeWeightsCancel) {
  Explanation a, b;
  a.predicted_label = b.predicted_label = 1;
  a.all_weights = {{"x", 0.4}, {"y", 0.1}};
  b.all_weights = {{"x", -0.4}};
  const std::vector<Explanation> ex{a, b};
  const auto g = aggregate_importance(ex, {"chatgpt", "human"});
  for (const auto& [tok, w] : g.classes[1].tokens) {
    if (tok == "x") {
      EXPECT_NEAR(w, 0.0, 1e-9);
    }
    if (tok == "y") {
      EXPECT_NEAR(w, 0.05, 1e-12);
    }
  }
}

TEST(RenderBars, OneLinePerToken) {
  const auto s = render_bars({{"realm", 0.3}, {"use", -0.2}});
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 2);
  EXPECT_NE(s.find("realm"), std::string::npos);
}
