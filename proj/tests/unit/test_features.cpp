#include <gtest/gtest.h>

#include <cmath>

#include "aitd/features.hpp"
#include "aitd/rng.hpp"
#include "oracles.hpp"

using namespace aitd;

TEST(Tfidf, SingleDocumentSymmetric) {
  const std::vector<TokenSeq> docs{{"a", "b"}};
  const auto m = TfidfModel::fit(docs);
  EXPECT_DOUBLE_EQ(m.idf()[0], 1.0);
  const auto v = m.transform(docs[0]);
  EXPECT_NEAR(v.values[0], 0.7071067811865476, 1e-12);
  EXPECT_NEAR(v.values[1], 0.7071067811865476, 1e-12);
}

TEST(Tfidf, ThreeDocOracle) {
  const std::vector<TokenSeq> docs{{"x", "y", "x"}, {"y", "z"}, {"z", "z", "w", "x"}};
  const auto m = TfidfModel::fit(docs);
  const auto want = oracle::tfidf(docs);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const auto v = m.transform(docs[i]);
    double norm = 0.0;
    for (double x : v.values) norm += x * x;
    EXPECT_NEAR(norm, 1.0, 1e-9);
    for (const auto& [t, w] : want[i]) EXPECT_NEAR(v.at(*m.vocabulary().index_of(t)), w, 1e-9);
  }
}

TEST(Tfidf, OutOfVocabularyIgnoredAndIndicesSorted) {
  const std::vector<TokenSeq> docs{{"b", "a"}, {"c"}};
  const auto m = TfidfModel::fit(docs);
  const auto v = m.transform({"zzz", "c", "a"});
  EXPECT_EQ(v.nnz(), 2u);
  EXPECT_LT(v.indices[0], v.indices[1]);
}

TEST(Tfidf, IdfNeverIncreasesWhenDocumentAdded) {
  std::vector<TokenSeq> docs{{"a", "b"}, {"b"}, {"c"}};
  const auto before = TfidfModel::fit(docs);
  docs.push_back({"a"});
  const auto after = TfidfModel::fit(docs);
  const auto ia = *before.vocabulary().index_of("a");
  EXPECT_LE(after.idf()[*after.vocabulary().index_of("a")], before.idf()[ia]);
  for (double idf : after.idf()) EXPECT_GT(idf, 1.0 - std::log(2.0));
}

TEST(Tfidf, JsonRoundTrip) {
  const std::vector<TokenSeq> docs{{"a", "b"}, {"b", "c", "c"}};
  const auto m = TfidfModel::fit(docs);
  const auto back = TfidfModel::from_json(m.to_json());
  EXPECT_EQ(back.transform(docs[1]), m.transform(docs[1]));
}

TEST(Vocabulary, MinDfAndMaxFeatures) {
  const std::vector<TokenSeq> docs{{"a", "b"}, {"a", "c"}, {"a", "b", "d"}};
  EXPECT_EQ(fit_vocabulary(docs, 2).size(), 2u);
  const auto v = fit_vocabulary(docs, 1, 1);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v.term(0), "a");
}

TEST(TopWords, SumOfTfIdfNotDocumentFrequency) {
  // "common" is in every human doc once; "burst" appears many times in one doc.
  std::vector<Document> docs;
  std::vector<TokenSeq> tokens{{"common"}, {"common"}, {"common", "burst", "burst", "burst", "burst", "burst"},
                               {"other"}};
  for (int i = 0; i < 4; ++i) {
    Document d;
    d.id = std::to_string(i);
    d.text = join_tokens(tokens[static_cast<std::size_t>(i)]);
    d.label = i < 3 ? Label::Human : Label::ChatGpt;
    docs.push_back(d);
  }
  const Corpus c(docs);
  const auto model = TfidfModel::fit(tokens);
  const auto top = top_tfidf_words(c, tokens, model, 2);
  const auto& human = top[0].label == Label::Human ? top[0] : top[1];
  EXPECT_EQ(human.rows.front().word, "burst");
}

TEST(Frequencies, CountsAndPercentages) {
  std::vector<Document> docs(2);
  docs[0].id = "0";
  docs[0].text = "security security use";
  docs[0].label = Label::Human;
  docs[1].id = "1";
  docs[1].text = "system";
  docs[1].label = Label::ChatGpt;
  const auto t = frequency_table(Corpus(docs), PrepConfig{}, 5);
  for (const auto& c : t) {
    if (c.label != Label::Human) continue;
    EXPECT_EQ(c.total_tokens, 3u);
    EXPECT_EQ(c.rows[0].word, "security");
    EXPECT_EQ(c.rows[0].count, 2u);
    EXPECT_NEAR(c.rows[0].percentage, 200.0 / 3.0, 1e-9);
  }
}
