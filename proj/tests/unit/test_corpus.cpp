#include <gtest/gtest.h>

#include <set>

#include "aitd/corpus.hpp"
#include "aitd/error.hpp"

using namespace aitd;

namespace {

Document doc(const std::string& id, Label label, const std::string& text = "some words here.") {
  Document d;
  d.id = id;
  d.title = id;
  d.text = text;
  d.label = label;
  return d;
}

Corpus balanced(std::size_t per_class) {
  std::vector<Document> docs;
  for (std::size_t i = 0; i < per_class; ++i) {
    docs.push_back(doc("a" + std::to_string(i), Label::ChatGpt));
    docs.push_back(doc("h" + std::to_string(i), Label::Human));
  }
  return Corpus(docs);
}

template <typename Fn>
ErrorKind kind_of(Fn fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Usage;
}

}  // namespace

TEST(Corpus, JsonlRoundTripAndCounts) {
  const Corpus c = balanced(500);
  EXPECT_EQ(c.count(Label::ChatGpt), 500u);
  EXPECT_EQ(c.count(Label::Human), 500u);
  const auto text = serialize_corpus(c, CorpusFormat::Jsonl);
  EXPECT_EQ(parse_corpus(text, CorpusFormat::Jsonl).corpus.documents(), c.documents());
  const auto csv = serialize_corpus(c, CorpusFormat::Csv);
  EXPECT_EQ(parse_corpus(csv, CorpusFormat::Csv).corpus.documents(), c.documents());
}

TEST(Corpus, BlankTextDropped) {
  const std::string in =
      R"({"id":"1","title":"t","text":"alpha","label":"human","source":"file"}
{"id":"2","title":"t","text":"   ","label":"human","source":"file"}
{"id":"3","title":"t","text":"beta","label":"chatgpt","source":"file"}
)";
  const auto r = parse_corpus(in, CorpusFormat::Jsonl);
  EXPECT_EQ(r.corpus.size(), 2u);
  EXPECT_EQ(r.dropped_empty, 1u);
}

TEST(Corpus, LoadErrors) {
  EXPECT_EQ(kind_of([] { load_corpus("/nonexistent/x.jsonl", CorpusFormat::Jsonl); }), ErrorKind::FileNotFound);
  EXPECT_EQ(kind_of([] { parse_corpus("{not json\n", CorpusFormat::Jsonl); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] {
              parse_corpus(R"({"id":"1","title":"t","text":"x","label":"robot"})", CorpusFormat::Jsonl);
            }),
            ErrorKind::UnknownLabel);
  EXPECT_EQ(kind_of([] { parse_corpus("", CorpusFormat::Jsonl); }), ErrorKind::ParseError);
  EXPECT_TRUE(parse_corpus("", CorpusFormat::Jsonl, LoadOptions{true}).corpus.empty());
}

TEST(Split, EightyTwentyPerClass) {
  const auto s = stratified_split(balanced(500), 0.8, 7);
  EXPECT_EQ(s.train.size(), 800u);
  EXPECT_EQ(s.test.size(), 200u);
  EXPECT_EQ(s.train.count(Label::ChatGpt), 400u);
  EXPECT_EQ(s.test.count(Label::Human), 100u);
}

TEST(Split, RoundingRuleSevenThree) {
  std::vector<Document> docs;
  for (int i = 0; i < 7; ++i) docs.push_back(doc("a" + std::to_string(i), Label::ChatGpt));
  for (int i = 0; i < 3; ++i) docs.push_back(doc("h" + std::to_string(i), Label::Human));
  const auto s = stratified_split(Corpus(docs), 0.8, 1);
  EXPECT_EQ(s.train.size(), 8u);
  EXPECT_NEAR(static_cast<double>(s.train.count(Label::ChatGpt)), 5.6, 1.0);
  EXPECT_NEAR(static_cast<double>(s.train.count(Label::Human)), 2.4, 1.0);
}

TEST(Split, DeterministicAndComplete) {
  const Corpus c = balanced(50);
  const auto a = stratified_split(c, 0.7, 3), b = stratified_split(c, 0.7, 3);
  EXPECT_EQ(a.train.documents(), b.train.documents());
  std::multiset<std::string> ids;
  for (const auto& d : a.train.documents()) ids.insert(d.id);
  for (const auto& d : a.test.documents()) ids.insert(d.id);
  EXPECT_EQ(ids.size(), 100u);
  EXPECT_EQ(std::set<std::string>(ids.begin(), ids.end()).size(), 100u);
}

TEST(Split, FullFractionAndErrors) {
  const auto s = stratified_split(balanced(5), 1.0, 0);
  EXPECT_EQ(s.train.size(), 10u);
  EXPECT_TRUE(s.test.empty());
  EXPECT_EQ(kind_of([] { stratified_split(Corpus{}, 0.8, 0); }), ErrorKind::EmptyCorpus);
}

TEST(Mixing, IdentityEndpoints) {
  const Document h = doc("h", Label::Human, "Human wrote this. Another human line.");
  const Document a = doc("a", Label::ChatGpt, "Model output here. More model text follows.");
  const auto zero = synthesize_mixed(h, a, 0.0, 1);
  EXPECT_EQ(zero.document.text, h.text);
  EXPECT_EQ(zero.document.label, Label::PureHuman);
  const auto one = synthesize_mixed(h, a, 1.0, 1);
  EXPECT_EQ(one.document.text, a.text);
  EXPECT_EQ(one.document.label, Label::PureAi);
}

TEST(Mixing, HalfOfTwentyTokens) {
  const std::string h10 = "alpha bravo charlie delta echo foxtrot golf hotel india juliet.";
  const std::string a10 = "kilo lima mike november oscar papa quebec romeo sierra tango.";
  const std::string a10b = "uniform victor whiskey xray yankee zulu apple banana cherry grape.";
  const std::string h10b = "lemon mango nectar olive peach quince radish spinach tomato turnip.";
  const auto r = synthesize_mixed(doc("h", Label::Human, h10 + " " + h10b), doc("a", Label::ChatGpt, a10 + " " + a10b),
                                  0.5, 4);
  EXPECT_EQ(r.ai_tokens, 10u);
  EXPECT_EQ(r.total_tokens, 20u);
  EXPECT_DOUBLE_EQ(r.document.ai_token_ratio, 0.5);
  EXPECT_EQ(r.document.label, Label::Mixed);
}

TEST(Mixing, MonotoneInTarget) {
  const Document h = doc("h", Label::Human, "One two three. Four five six seven. Eight nine. Ten eleven twelve thirteen.");
  const Document a = doc("a", Label::ChatGpt, "Red blue. Green yellow purple. Orange pink brown black white. Gray.");
  double prev = -1.0;
  for (double t = 0.0; t <= 1.0001; t += 0.05) {
    const double r = synthesize_mixed(h, a, std::min(t, 1.0), 9).document.ai_token_ratio;
    EXPECT_GE(r, prev);
    prev = r;
  }
}

TEST(Mixing, EmptyInputRejected) {
  EXPECT_EQ(kind_of([] { synthesize_mixed(doc("h", Label::Human, ""), doc("a", Label::ChatGpt), 0.5, 0); }),
            ErrorKind::EmptyInput);
}

TEST(ThreeClass, BalancedAndDeterministic) {
  std::vector<Document> hp, ap;
  for (int i = 0; i < 12; ++i) {
    hp.push_back(doc("h" + std::to_string(i), Label::Human, "Human sentence one. Human sentence two here."));
    ap.push_back(doc("a" + std::to_string(i), Label::ChatGpt, "Machine sentence one. Machine sentence two there."));
  }
  ThreeClassOptions o;
  o.n_per_class = 5;
  o.ratio_low = o.ratio_high = 0.5;
  const Corpus c = build_three_class_set(Corpus(hp), Corpus(ap), o);
  EXPECT_EQ(c.size(), 15u);
  EXPECT_EQ(c.count(Label::Mixed), 5u);
  for (const auto& d : c.documents()) {
    if (d.label == Label::Mixed) {
      EXPECT_NEAR(d.ai_token_ratio, 0.5, 1e-9);
    }
  }
  EXPECT_EQ(build_three_class_set(Corpus(hp), Corpus(ap), o).documents(), c.documents());
  o.n_per_class = 0;
  EXPECT_TRUE(build_three_class_set(Corpus(hp), Corpus(ap), o).empty());
  o.n_per_class = 12;
  EXPECT_EQ(kind_of([&] { build_three_class_set(Corpus(hp), Corpus(ap), o); }), ErrorKind::InsufficientPool);
}

TEST(Concatenate, GroupsByTitle) {
  std::vector<Document> docs{doc("p1", Label::Human, "First."), doc("p2", Label::Human, "Second."),
                             doc("p3", Label::ChatGpt, "Third.")};
  docs[1].title = docs[0].title;
  const Corpus c = concatenate_by_title(Corpus(docs));
  EXPECT_EQ(c.size(), 2u);
}
