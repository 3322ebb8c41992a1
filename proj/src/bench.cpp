#include "aitd/bench.hpp"

#include <chrono>

#include "aitd/error.hpp"
#include "aitd/rng.hpp"

namespace aitd {

using nlohmann::json;

std::string_view to_string(Granularity g) { return g == Granularity::Article ? "article" : "paragraph"; }

Granularity parse_granularity(std::string_view text) {
  if (text == "article") return Granularity::Article;
  if (text == "paragraph") return Granularity::Paragraph;
  throw Error(ErrorKind::Configuration, "unknown granularity '" + std::string(text) + "'");
}

void to_json(json& j, const ExperimentSpec& s) {
  j = json{{"granularity", to_string(s.granularity)}, {"models", s.models},       {"train_fraction", s.train_fraction},
           {"seed", s.seed},                          {"prep", s.prep},           {"vectorizer", s.vectorizer}};
}

void from_json(const json& j, ExperimentSpec& s) {
  const ExperimentSpec d;
  s.granularity = parse_granularity(j.value("granularity", std::string("paragraph")));
  s.models = j.value("models", std::vector<ModelSpec>{});
  s.train_fraction = j.value("train_fraction", d.train_fraction);
  s.seed = j.value("seed", d.seed);
  s.prep = j.value("prep", d.prep);
  s.vectorizer = j.value("vectorizer", d.vectorizer);
}

void to_json(json& j, const ThreeClassSpec& s) {
  j = json{{"n_per_class", s.build.n_per_class},
           {"ratio_low", s.build.ratio_low},
           {"ratio_high", s.build.ratio_high},
           {"seed", s.build.seed},
           {"prep", s.build.prep},
           {"boosted", s.boosted},
           {"train_fraction", s.train_fraction},
           {"vectorizer", s.vectorizer}};
}

void from_json(const json& j, ThreeClassSpec& s) {
  const ThreeClassSpec d;
  s.build.n_per_class = j.value("n_per_class", d.build.n_per_class);
  s.build.ratio_low = j.value("ratio_low", d.build.ratio_low);
  s.build.ratio_high = j.value("ratio_high", d.build.ratio_high);
  s.build.seed = j.value("seed", d.build.seed);
  s.build.prep = j.value("prep", d.build.prep);
  s.boosted = j.value("boosted", d.boosted);
  s.train_fraction = j.value("train_fraction", d.train_fraction);
  s.vectorizer = j.value("vectorizer", d.vectorizer);
}

Dataset make_dataset(const Corpus& corpus, std::span<const TokenSeq> tokens, const TfidfModel& tfidf) {
  if (tokens.size() != corpus.size()) throw Error(ErrorKind::LengthMismatch, "tokens vs corpus size");
  Dataset d{tfidf.transform_all(tokens), corpus.class_indices(), class_count(corpus.task())};
  return d;
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<int> predicted_labels(const std::vector<Prediction>& predictions) {
  std::vector<int> out;
  out.reserve(predictions.size());
  for (const auto& p : predictions) out.push_back(p.label);
  return out;
}

}  // namespace

ExperimentResult run_detection_experiment(const Corpus& corpus, const ExperimentSpec& spec) {
  if (spec.models.empty()) throw Error(ErrorKind::Configuration, "experiment needs at least one model");
  if (corpus.empty()) throw Error(ErrorKind::EmptyCorpus, "experiment corpus is empty");
  ExperimentResult r;
  r.corpus = spec.granularity == Granularity::Article ? concatenate_by_title(corpus) : corpus;
  r.split = stratified_split(r.corpus, spec.train_fraction, spec.seed);
  r.train_tokens = preprocess_all(r.split.train, spec.prep, spec.threads);
  r.test_tokens = preprocess_all(r.split.test, spec.prep, spec.threads);
  r.tfidf = TfidfModel::fit(r.train_tokens, spec.vectorizer);
  const Dataset train = make_dataset(r.split.train, r.train_tokens, r.tfidf);
  const Dataset test = make_dataset(r.split.test, r.test_tokens, r.tfidf);
  const auto names = class_names(r.corpus.task());

  for (std::size_t m = 0; m < spec.models.size(); ++m) {
    ModelResult mr;
    mr.family = spec.models[m].family;
    const auto start = std::chrono::steady_clock::now();
    mr.model = train_model(spec.models[m], train, derive_seed(spec.seed, 1000 + m), spec.threads);
    mr.train_seconds = seconds_since(start);
    const auto predictions = mr.model->predict_all(test.X, spec.threads);
    mr.confusion = confusion(test.y, predicted_labels(predictions), names);
    mr.metrics = metrics(mr.confusion);
    if (test.n_classes == 2) {
      std::vector<double> scores;
      for (const auto& p : predictions) scores.push_back(p.probabilities[1]);
      bool both = false;
      for (int y : test.y) both = both || y != test.y.front();
      if (both) mr.roc = roc(test.y, scores);
    }
    r.models.push_back(std::move(mr));
  }
  return r;
}

ThreeClassResult run_three_class_experiment(const Corpus& human_pool, const Corpus& ai_pool,
                                            const ThreeClassSpec& spec) {
  ThreeClassResult r;
  r.dataset = build_three_class_set(human_pool, ai_pool, spec.build);
  r.split = stratified_split(r.dataset, spec.train_fraction, spec.build.seed);
  const auto train_tokens = preprocess_all(r.split.train, spec.build.prep, spec.threads);
  const auto test_tokens = preprocess_all(r.split.test, spec.build.prep, spec.threads);
  r.tfidf = TfidfModel::fit(train_tokens, spec.vectorizer);
  const Dataset train = make_dataset(r.split.train, train_tokens, r.tfidf);
  const Dataset test = make_dataset(r.split.test, test_tokens, r.tfidf);
  BoostedParams params = spec.boosted;
  params.threads = spec.threads;
  const auto start = std::chrono::steady_clock::now();
  r.model = std::make_shared<OneVsRestBoosted>(train_boosted_ovr(train, params));
  r.train_seconds = seconds_since(start);
  r.confusion = confusion(test.y, predicted_labels(r.model->predict_all(test.X, spec.threads)),
                          class_names(Task::ThreeClass));
  r.metrics = metrics(r.confusion);
  return r;
}

ComparisonResult compare_detectors(const Corpus& test_set, std::span<Detector* const> detectors) {
  if (test_set.empty()) throw Error(ErrorKind::EmptyCorpus, "comparison test set is empty");
  if (test_set.task() != Task::ThreeClass) {
    throw Error(ErrorKind::Configuration, "comparison needs a three-class labeled test set");
  }
  if (detectors.empty()) throw Error(ErrorKind::Configuration, "no detectors to compare");
  ComparisonResult c;
  for (const auto& d : test_set.documents()) c.document_ids.push_back(d.id);
  const auto truth = test_set.class_indices();
  for (Detector* detector : detectors) {
    DetectorResult dr;
    dr.name = detector->name();
    std::vector<int> predicted;
    for (const auto& d : test_set.documents()) {
      dr.verdicts.push_back(detector->classify(d));
      predicted.push_back(verdict_index(dr.verdicts.back().verdict));
    }
    dr.confusion = confusion(truth, predicted, class_names(Task::ThreeClass));
    dr.metrics = metrics(dr.confusion);
    c.detectors.push_back(std::move(dr));
  }
  return c;
}

ComparisonResult compare_detectors(const Corpus& test_set, Detector& local, Detector& external) {
  Detector* both[] = {&local, &external};
  return compare_detectors(test_set, both);
}

json to_json(const ComparisonResult& c) {
  json detectors = json::array();
  for (const auto& d : c.detectors) {
    json verdicts = json::array();
    for (std::size_t i = 0; i < d.verdicts.size(); ++i) {
      json v{{"id", c.document_ids[i]}, {"verdict", to_string(d.verdicts[i].verdict)}};
      if (!d.verdicts[i].error.empty()) v["error"] = d.verdicts[i].error;
      verdicts.push_back(std::move(v));
    }
    detectors.push_back(
        {{"name", d.name}, {"confusion", to_json(d.confusion)}, {"metrics", to_json(d.metrics)}, {"verdicts", verdicts}});
  }
  return json{{"documents", c.document_ids.size()}, {"detectors", detectors}};
}

}  // namespace aitd
