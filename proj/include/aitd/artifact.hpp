#pragma once

// Versioned JSON container for a trained pipeline: preprocessing, vectorizer
// and classifier together.

#include <filesystem>
#include <memory>
#include <string>

#include <json.hpp>

#include "aitd/corpus.hpp"
#include "aitd/features.hpp"
#include "aitd/models/classifier.hpp"

namespace aitd {

inline constexpr std::string_view kArtifactMagic = "AITD-MODEL";
inline constexpr int kArtifactSchemaVersion = 1;

struct ModelArtifact {
  Task task = Task::Binary;
  PrepConfig prep;
  TfidfModel tfidf;
  std::shared_ptr<Classifier> model;
  /// Training configuration echo.
  nlohmann::json config = nlohmann::json::object();
};

nlohmann::json artifact_to_json(const ModelArtifact& a);
/// Rejects a wrong magic string, an unknown schema version, or a model whose
/// feature space differs from the vectorizer's.
ModelArtifact artifact_from_json(const nlohmann::json& j);

void save_artifact(const ModelArtifact& a, const std::filesystem::path& path);
ModelArtifact load_artifact(const std::filesystem::path& path);

}  // namespace aitd
