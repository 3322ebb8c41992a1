#pragma once

// Run reports: a deterministic JSON document and a markdown rendering laid
// out like the study's tables. Wall-clock timings go to a separate file.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "aitd/bench.hpp"
#include "aitd/eval.hpp"
#include "aitd/explain.hpp"
#include "aitd/features.hpp"

namespace aitd {

std::string_view tool_version();

struct ReportModel {
  std::string name;
  MetricsReport metrics;
  ConfusionMatrix confusion;
  std::optional<RocCurve> roc;
};

struct RunReport {
  std::string command;
  std::uint64_t seed = 0;
  nlohmann::json config = nlohmann::json::object();
  /// null: section omitted.
  nlohmann::json dataset;
  std::vector<ReportModel> models;
  std::vector<ClassFrequencies> frequencies;
  std::vector<ClassWeights> top_words;
  std::optional<GlobalImportance> importance;
  std::vector<Explanation> explanations;
  std::optional<ComparisonResult> comparison;
  /// Seconds per phase; written to timings.json only.
  std::map<std::string, double> timings;
};

/// Class counts and token totals per class.
nlohmann::json dataset_summary(const Corpus& corpus, std::span<const TokenSeq> tokens);

std::string config_hash(const nlohmann::json& config);

/// Keys sorted; no timings, so identical runs give identical bytes.
nlohmann::json report_json(const RunReport& report);
std::string report_markdown(const RunReport& report);
/// Markdown from a report.json document alone.
std::string render_markdown(const nlohmann::json& report);
std::string confusion_markdown(const ConfusionMatrix& cm);

struct ReportFormats {
  bool json = true;
  bool markdown = true;
};

/// Writes report.json / report.md / timings.json into `dir`.
void emit_report(const RunReport& report, const std::filesystem::path& dir, ReportFormats formats = {});

}  // namespace aitd
