#include "aitd/artifact.hpp"

#include <fstream>
#include <sstream>

#include "aitd/error.hpp"

namespace aitd {

using nlohmann::json;

json artifact_to_json(const ModelArtifact& a) {
  if (!a.model) throw Error(ErrorKind::Configuration, "artifact without a model");
  return json{{"magic", kArtifactMagic},         {"schema_version", kArtifactSchemaVersion},
              {"task", to_string(a.task)},       {"prep", a.prep},
              {"tfidf", a.tfidf.to_json()},      {"model", a.model->to_json()},
              {"config", a.config}};
}

ModelArtifact artifact_from_json(const json& j) {
  if (!j.is_object() || j.value("magic", std::string()) != kArtifactMagic) {
    throw Error(ErrorKind::ParseError, "not a model artifact (bad magic)");
  }
  const int version = j.value("schema_version", -1);
  if (version != kArtifactSchemaVersion) {
    throw Error(ErrorKind::ParseError, "unsupported artifact schema version " + std::to_string(version));
  }
  try {
    ModelArtifact a;
    a.task = parse_task(j.at("task").get<std::string>());
    a.prep = j.at("prep").get<PrepConfig>();
    a.tfidf = TfidfModel::from_json(j.at("tfidf"));
    a.model = classifier_from_json(j.at("model"));
    a.config = j.value("config", json::object());
    if (a.model->n_features() != a.tfidf.dimension()) {
      throw Error(ErrorKind::DimensionMismatch, "artifact model and vectorizer disagree on dimension");
    }
    return a;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("artifact: ") + e.what());
  }
}

void save_artifact(const ModelArtifact& a, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << artifact_to_json(a).dump() << '\n';
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

ModelArtifact load_artifact(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::FileNotFound, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  json j;
  try {
    j = json::parse(buffer.str());
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
  }
  return artifact_from_json(j);
}

}  // namespace aitd
