#pragma once

// Run configuration: everything a subcommand needs to reproduce its outputs.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "aitd/bench.hpp"
#include "aitd/detector.hpp"
#include "aitd/explain.hpp"
#include "aitd/features.hpp"
#include "aitd/models/factory.hpp"
#include "aitd/synthetic.hpp"
#include "aitd/textprep.hpp"

namespace aitd {

inline constexpr int kConfigSchemaVersion = 1;

struct RunConfig {
  int schema_version = kConfigSchemaVersion;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  /// Named inputs: corpus, test, human_pool, ai_pool, replay, local_verdicts...
  std::map<std::string, std::string> paths;
  PrepConfig prep;
  VectorizerOptions vectorizer;
  std::vector<ModelSpec> models{ModelSpec{"boosted", nlohmann::json::object()}};
  double train_fraction = 0.7;
  Granularity granularity = Granularity::Paragraph;
  LimeParams lime;
  std::size_t explain_instances = 3;
  std::size_t top_words = 20;
  ThreeClassSpec three_class;
  ExternalDetectorOptions external;
  SyntheticOptions synthetic;
};

void to_json(nlohmann::json& j, const RunConfig& c);
/// Missing fields keep their defaults; a schema version other than the
/// current one is a Configuration error.
void from_json(const nlohmann::json& j, RunConfig& c);

RunConfig load_config(const std::filesystem::path& path);
void save_config(const RunConfig& config, const std::filesystem::path& path);

}  // namespace aitd
