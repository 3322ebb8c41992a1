#include <gtest/gtest.h>

#include <filesystem>

#include "aitd/detector.hpp"
#include "aitd/error.hpp"
#include "aitd/wikipedia.hpp"

using namespace aitd;
using nlohmann::json;

namespace {

const std::string kLong(300, 'a');

std::string prob_body(double p) { return json{{"documents", {{{"completely_generated_prob", p}}}}}.dump(); }

}  // namespace

TEST(External, ShortTextSkipsNetwork) {
  FunctionTransport t([](const HttpRequest&) { return HttpResponse{200, prob_body(0.99)}; });
  const auto v = external_classify(t, std::string(100, 'x'), ExternalDetectorOptions{});
  EXPECT_EQ(v.verdict, Verdict::Unrecognized);
  EXPECT_EQ(t.calls(), 0u);
}

TEST(External, ThresholdRule) {
  const ExternalDetectorOptions o;
  EXPECT_EQ(verdict_for_probability(0.97, o), Verdict::PureAi);
  EXPECT_EQ(verdict_for_probability(0.05, o), Verdict::PureHuman);
  EXPECT_EQ(verdict_for_probability(0.5, o), Verdict::Mixed);
  FunctionTransport t([](const HttpRequest& r) {
    EXPECT_EQ(r.method, "POST");
    EXPECT_EQ(json::parse(r.body).at("document"), kLong);
    return HttpResponse{200, prob_body(0.97)};
  });
  EXPECT_EQ(external_classify(t, kLong, o).verdict, Verdict::PureAi);
}

TEST(External, ServerErrorsRetriedThenFolded) {
  FunctionTransport t([](const HttpRequest&) { return HttpResponse{500, "oops"}; });
  const auto v = external_classify(t, kLong, ExternalDetectorOptions{});
  EXPECT_EQ(v.verdict, Verdict::Unrecognized);
  EXPECT_EQ(t.calls(), 3u);
  EXPECT_EQ(v.attempts, 3u);
  EXPECT_FALSE(v.error.empty());
}

TEST(External, ClientErrorNotRetriedAndBadPayloadFolded) {
  FunctionTransport bad_request([](const HttpRequest&) { return HttpResponse{400, "{}"}; });
  EXPECT_EQ(external_classify(bad_request, kLong, ExternalDetectorOptions{}).verdict, Verdict::Unrecognized);
  EXPECT_EQ(bad_request.calls(), 1u);
  FunctionTransport garbage([](const HttpRequest&) { return HttpResponse{200, "not json"}; });
  EXPECT_EQ(external_classify(garbage, kLong, ExternalDetectorOptions{}).verdict, Verdict::Unrecognized);
  FunctionTransport throwing([](const HttpRequest&) -> HttpResponse { throw Error(ErrorKind::NetworkError, "down"); });
  const auto v = external_classify(throwing, kLong, ExternalDetectorOptions{});
  EXPECT_EQ(v.verdict, Verdict::Unrecognized);
  EXPECT_EQ(throwing.calls(), 3u);
}

TEST(External, ReplayServesRecordedResponse) {
  const auto path = std::filesystem::temp_directory_path() / "aitd_replay_test.jsonl";
  std::filesystem::remove(path);
  const ExternalDetectorOptions o;
  append_replay(path, ReplayEntry{request_hash(detector_request(kLong, o)), prob_body(0.02), 200});
  ReplayTransport replay(load_replay(path));
  EXPECT_EQ(external_classify(replay, kLong, o).verdict, Verdict::PureHuman);
  EXPECT_EQ(external_classify(replay, kLong + "b", o).verdict, Verdict::Unrecognized);
  std::filesystem::remove(path);
}

TEST(External, RecordingWritesReplayableLines) {
  const auto path = std::filesystem::temp_directory_path() / "aitd_record_test.jsonl";
  std::filesystem::remove(path);
  FunctionTransport inner([](const HttpRequest&) { return HttpResponse{200, prob_body(0.5)}; });
  RecordingTransport rec(inner, path);
  EXPECT_EQ(external_classify(rec, kLong, ExternalDetectorOptions{}).verdict, Verdict::Mixed);
  ReplayTransport replay(load_replay(path));
  EXPECT_EQ(external_classify(replay, kLong, ExternalDetectorOptions{}).verdict, Verdict::Mixed);
  std::filesystem::remove(path);
}

TEST(Fixed, UnknownIdIsError) {
  const auto f = FixedDetector::from_json(json{{"name", "x"}, {"verdicts", {{"d1", "mixed"}}}});
  Document d;
  d.id = "d1";
  FixedDetector copy = f;
  EXPECT_EQ(copy.classify(d).verdict, Verdict::Mixed);
  d.id = "d2";
  EXPECT_THROW(copy.classify(d), Error);
}

TEST(Verdicts, RoundTrip) {
  for (const auto v : {Verdict::PureAi, Verdict::Mixed, Verdict::PureHuman, Verdict::Unrecognized}) {
    EXPECT_EQ(parse_verdict(to_string(v)), v);
    EXPECT_EQ(verdict_from_index(verdict_index(v)), v);
  }
}

TEST(Wikipedia, TwoPagesAndDedup) {
  FunctionTransport t([](const HttpRequest& r) {
    if (r.url.find("list=search") != std::string::npos) {
      return HttpResponse{200, R"({"query":{"search":[{"title":"Firewall"},{"title":"Malware"},{"title":"Firewall"}]}})"};
    }
    const std::string title = r.url.find("Firewall") != std::string::npos ? "Firewall" : "Malware";
    return HttpResponse{200, json{{"query", {{"pages", {{"1", {{"title", title}, {"extract", title + " text.\n== H ==\nMore."}}}}}}}}.dump()};
  });
  const auto docs = fetch_wikipedia(t, "computer security");
  ASSERT_EQ(docs.size(), 2u);
  EXPECT_EQ(docs[0].title, "Firewall");
  EXPECT_EQ(docs[0].label, Label::Human);
  EXPECT_EQ(docs[0].source, Source::WikipediaApi);
  EXPECT_EQ(docs[0].text.find("=="), std::string::npos);
}

TEST(Wikipedia, EmptySearchIsEmptyResult) {
  FunctionTransport t([](const HttpRequest&) { return HttpResponse{200, R"({"query":{"search":[]}})"}; });
  try {
    fetch_wikipedia(t, "nothing");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyResult);
  }
}

TEST(Wikipedia, MarkupStripped) {
  const auto s = strip_wiki_markup("A {{cite}}b<!-- note --> <br/>c");
  EXPECT_EQ(s.find_first_of("{}<>"), std::string::npos);
  EXPECT_NE(s.find('A'), std::string::npos);
  EXPECT_EQ(s.find("cite"), std::string::npos);
}
