#include "aitd/config.hpp"

#include <fstream>
#include <sstream>

#include "aitd/error.hpp"

namespace aitd {

using nlohmann::json;

void to_json(json& j, const RunConfig& c) {
  j = json{{"schema_version", c.schema_version},
           {"seed", c.seed},
           {"paths", c.paths},
           {"prep", c.prep},
           {"vectorizer", c.vectorizer},
           {"models", c.models},
           {"train_fraction", c.train_fraction},
           {"granularity", to_string(c.granularity)},
           {"lime", c.lime},
           {"explain_instances", c.explain_instances},
           {"top_words", c.top_words},
           {"three_class", c.three_class},
           {"external", c.external},
           {"synthetic", c.synthetic}};
}

void from_json(const json& j, RunConfig& c) {
  if (!j.is_object()) throw Error(ErrorKind::Configuration, "config must be a JSON object");
  const RunConfig d;
  c.schema_version = j.value("schema_version", kConfigSchemaVersion);
  if (c.schema_version != kConfigSchemaVersion) {
    throw Error(ErrorKind::Configuration, "unsupported config schema_version " + std::to_string(c.schema_version));
  }
  try {
    c.seed = j.value("seed", d.seed);
    c.threads = j.value("threads", d.threads);
    c.paths = j.value("paths", d.paths);
    c.prep = j.value("prep", d.prep);
    c.vectorizer = j.value("vectorizer", d.vectorizer);
    c.models = j.value("models", d.models);
    c.train_fraction = j.value("train_fraction", d.train_fraction);
    c.granularity = parse_granularity(j.value("granularity", std::string(to_string(d.granularity))));
    c.lime = j.value("lime", d.lime);
    c.explain_instances = j.value("explain_instances", d.explain_instances);
    c.top_words = j.value("top_words", d.top_words);
    c.three_class = j.value("three_class", d.three_class);
    c.external = j.value("external", d.external);
    c.synthetic = j.value("synthetic", d.synthetic);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Configuration, std::string("config: ") + e.what());
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::FileNotFound, "cannot open config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str()).get<RunConfig>();
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
  }
}

void save_config(const RunConfig& config, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << json(config).dump(2) << '\n';
}

}  // namespace aitd
