#pragma once

// Experiment orchestration: shared-split multi-model runs, the three-class
// study, and side-by-side detector comparison.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "aitd/corpus.hpp"
#include "aitd/detector.hpp"
#include "aitd/eval.hpp"
#include "aitd/features.hpp"
#include "aitd/models/boosted.hpp"
#include "aitd/models/factory.hpp"

namespace aitd {

enum class Granularity { Article, Paragraph };

std::string_view to_string(Granularity g);
Granularity parse_granularity(std::string_view text);

struct ExperimentSpec {
  /// Article concatenates same-title documents before splitting.
  Granularity granularity = Granularity::Paragraph;
  std::vector<ModelSpec> models;
  double train_fraction = 0.7;
  std::uint64_t seed = 0;
  PrepConfig prep;
  VectorizerOptions vectorizer;
  unsigned threads = 1;
};

void to_json(nlohmann::json& j, const ExperimentSpec& s);
void from_json(const nlohmann::json& j, ExperimentSpec& s);

struct ModelResult {
  std::string family;
  ConfusionMatrix confusion;
  MetricsReport metrics;
  /// Binary tasks only; class 1 is positive.
  std::optional<RocCurve> roc;
  double train_seconds = 0.0;
  std::shared_ptr<Classifier> model;
};

struct ExperimentResult {
  Corpus corpus;
  SplitResult split;
  std::vector<TokenSeq> train_tokens;
  std::vector<TokenSeq> test_tokens;
  TfidfModel tfidf;
  std::vector<ModelResult> models;
};

Dataset make_dataset(const Corpus& corpus, std::span<const TokenSeq> tokens, const TfidfModel& tfidf);

/// One stratified split and one fitted vectorizer shared by every model.
ExperimentResult run_detection_experiment(const Corpus& corpus, const ExperimentSpec& spec);

struct ThreeClassSpec {
  ThreeClassOptions build;
  BoostedParams boosted;
  double train_fraction = 2.0 / 3.0;
  VectorizerOptions vectorizer;
  unsigned threads = 1;
};

void to_json(nlohmann::json& j, const ThreeClassSpec& s);
void from_json(const nlohmann::json& j, ThreeClassSpec& s);

struct ThreeClassResult {
  Corpus dataset;
  SplitResult split;
  TfidfModel tfidf;
  std::shared_ptr<Classifier> model;
  ConfusionMatrix confusion;
  MetricsReport metrics;
  double train_seconds = 0.0;
};

/// Builds the PureAi / Mixed / PureHuman set, splits it, trains one-vs-rest
/// boosted trees and evaluates on the held-out part.
ThreeClassResult run_three_class_experiment(const Corpus& human_pool, const Corpus& ai_pool,
                                            const ThreeClassSpec& spec);

struct DetectorResult {
  std::string name;
  std::vector<DetectorVerdict> verdicts;
  ConfusionMatrix confusion;
  MetricsReport metrics;
};

struct ComparisonResult {
  std::vector<std::string> document_ids;
  std::vector<DetectorResult> detectors;
};

/// Every detector sees the same documents in the same order; detectors run
/// one after another and documents are classified sequentially.
ComparisonResult compare_detectors(const Corpus& test_set, std::span<Detector* const> detectors);
ComparisonResult compare_detectors(const Corpus& test_set, Detector& local, Detector& external);

/// Verdicts, matrices and metrics; latencies are left out so replays stay
/// byte-identical.
nlohmann::json to_json(const ComparisonResult& c);

}  // namespace aitd
