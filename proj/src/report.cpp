#include "aitd/report.hpp"

#include <fstream>

#include <fmt/format.h>

#include "aitd/error.hpp"
#include "aitd/transport.hpp"

namespace aitd {

using nlohmann::json;

std::string_view tool_version() { return AITD_VERSION; }

json dataset_summary(const Corpus& corpus, std::span<const TokenSeq> tokens) {
  json classes = json::object();
  for (const auto& [label, n] : corpus.class_counts()) {
    std::size_t total = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (corpus[i].label == label && i < tokens.size()) total += tokens[i].size();
    }
    classes[std::string(to_string(label))] = {{"documents", n}, {"tokens", total}};
  }
  return json{{"task", to_string(corpus.task())}, {"documents", corpus.size()}, {"classes", classes}};
}

std::string config_hash(const json& config) { return sha256_hex(config.dump()); }

json report_json(const RunReport& r) {
  json out{{"tool", "aitd"},
           {"version", tool_version()},
           {"command", r.command},
           {"seed", r.seed},
           {"config", r.config},
           {"config_hash", config_hash(r.config)}};
  if (!r.dataset.is_null()) out["dataset"] = r.dataset;
  if (!r.models.empty()) {
    json models = json::array();
    for (const auto& m : r.models) {
      json e{{"name", m.name}, {"metrics", to_json(m.metrics)}, {"confusion", to_json(m.confusion)}};
      if (m.roc) e["roc"] = to_json(*m.roc);
      models.push_back(std::move(e));
    }
    out["models"] = std::move(models);
  }
  if (!r.frequencies.empty()) out["word_frequencies"] = to_json(r.frequencies);
  if (!r.top_words.empty()) out["top_tfidf_words"] = to_json(r.top_words);
  if (r.importance) out["global_importance"] = to_json(*r.importance);
  if (!r.explanations.empty()) {
    json ex = json::array();
    for (const auto& e : r.explanations) ex.push_back(to_json(e));
    out["explanations"] = std::move(ex);
  }
  if (r.comparison) out["comparison"] = to_json(*r.comparison);
  return out;
}

namespace {

std::string pct(double v) { return fmt::format("{:.2f}%", 100.0 * v); }

std::vector<TokenWeight> token_weights(const json& rows) {
  std::vector<TokenWeight> out;
  for (const auto& r : rows) out.emplace_back(r.at("token").get<std::string>(), r.at("weight").get<double>());
  return out;
}

ConfusionMatrix confusion_from_json(const json& j) {
  ConfusionMatrix cm;
  cm.classes = j.at("classes").get<std::vector<std::string>>();
  cm.counts = j.at("counts").get<std::vector<std::vector<std::size_t>>>();
  cm.unrecognized = j.at("unrecognized").get<std::vector<std::size_t>>();
  return cm;
}

double num(const json& j, const char* key) { return j.at(key).get<double>(); }

}  // namespace

std::string confusion_markdown(const ConfusionMatrix& cm) {
  const std::size_t k = cm.classes.size();
  std::string s = "| Actual \\ Predicted |";
  for (const auto& c : cm.classes) s += " " + c + " |";
  s += " Unrecognized | Total |\n|---|";
  for (std::size_t c = 0; c < k + 2; ++c) s += "---:|";
  s += "\n";
  for (std::size_t a = 0; a < k; ++a) {
    s += "| " + cm.classes[a] + " |";
    for (std::size_t p = 0; p < k; ++p) s += fmt::format(" {} |", cm.counts[a][p]);
    s += fmt::format(" {} | {} |\n", cm.unrecognized[a], cm.row_total(a));
  }
  s += "| Total |";
  for (std::size_t p = 0; p < k; ++p) s += fmt::format(" {} |", cm.column_total(p));
  s += fmt::format(" {} | {} |\n", cm.unrecognized_total(), cm.total());
  return s;
}

std::string render_markdown(const json& r) {
  std::string s = "# Run report\n\n";
  s += fmt::format("- Tool version: {}\n- Command: {}\n- Seed: {}\n- Config hash: {}\n",
                   r.at("version").get<std::string>(), r.at("command").get<std::string>(),
                   r.at("seed").get<std::uint64_t>(), r.at("config_hash").get<std::string>());

  if (r.contains("dataset")) {
    s += "\n## Dataset\n\n| Class | Documents | Tokens |\n|---|---:|---:|\n";
    for (const auto& [name, v] : r["dataset"].at("classes").items()) {
      s += fmt::format("| {} | {} | {} |\n", name, v.at("documents").get<std::size_t>(),
                       v.at("tokens").get<std::size_t>());
    }
  }

  if (r.contains("word_frequencies")) {
    s += "\n## Word frequencies\n";
    for (const auto& t : r["word_frequencies"]) {
      s += fmt::format("\n### {} ({} tokens)\n\n| Word | Count | Percentage |\n|---|---:|---:|\n",
                       t.at("class").get<std::string>(), t.at("total_tokens").get<std::size_t>());
      for (const auto& row : t.at("rows")) {
        s += fmt::format("| {} | {} | {:.2f}% |\n", row.at("word").get<std::string>(),
                         row.at("count").get<std::size_t>(), num(row, "percentage"));
      }
    }
  }

  if (r.contains("top_tfidf_words")) {
    s += "\n## Top TF-IDF words\n";
    for (const auto& t : r["top_tfidf_words"]) {
      s += fmt::format("\n### {}\n\n| Word | Weight |\n|---|---:|\n", t.at("class").get<std::string>());
      for (const auto& row : t.at("rows")) {
        s += fmt::format("| {} | {:.4f} |\n", row.at("word").get<std::string>(), num(row, "weight"));
      }
    }
  }

  if (r.contains("models")) {
    s += "\n## Model results\n\n| Model | Accuracy | Precision (macro) | Recall (macro) | F1 (macro) | F1 (weighted) | AUC |\n";
    s += "|---|---:|---:|---:|---:|---:|---:|\n";
    for (const auto& m : r["models"]) {
      const auto& mt = m.at("metrics");
      s += fmt::format("| {} | {} | {} | {} | {} | {} | {} |\n", m.at("name").get<std::string>(),
                       pct(num(mt, "accuracy")), pct(num(mt["macro"], "precision")), pct(num(mt["macro"], "recall")),
                       pct(num(mt["macro"], "f1")), pct(num(mt["weighted"], "f1")),
                       m.contains("roc") ? fmt::format("{:.4f}", num(m["roc"], "auc")) : std::string("n/a"));
    }
    s += "\n## Confusion matrices\n";
    for (const auto& m : r["models"]) {
      s += fmt::format("\n### {}\n\n", m.at("name").get<std::string>()) +
           confusion_markdown(confusion_from_json(m.at("confusion")));
    }
  }

  if (r.contains("comparison")) {
    s += "\n## Detector comparison\n\n| Detector | Accuracy | F1 (macro) | F1 (weighted) | Unrecognized |\n";
    s += "|---|---:|---:|---:|---:|\n";
    const auto& detectors = r["comparison"].at("detectors");
    for (const auto& d : detectors) {
      const auto& mt = d.at("metrics");
      s += fmt::format("| {} | {} | {} | {} | {} |\n", d.at("name").get<std::string>(), pct(num(mt, "accuracy")),
                       pct(num(mt["macro"], "f1")), pct(num(mt["weighted"], "f1")),
                       mt.at("unrecognized_total").get<std::size_t>());
    }
    for (const auto& d : detectors) {
      s += fmt::format("\n### {}\n\n", d.at("name").get<std::string>()) +
           confusion_markdown(confusion_from_json(d.at("confusion")));
      s += "\n| Class | Precision | Recall | F1 |\n|---|---:|---:|---:|\n";
      for (const auto& c : d.at("metrics").at("per_class")) {
        s += fmt::format("| {} | {} | {} | {} |\n", c.at("class").get<std::string>(), pct(num(c, "precision")),
                         pct(num(c, "recall")), pct(num(c, "f1")));
      }
    }
  }

  if (r.contains("global_importance")) {
    s += "\n## Global feature importance\n";
    for (const auto& c : r["global_importance"]) {
      if (c.at("tokens").empty()) continue;
      s += fmt::format("\n### {} ({} instances)\n\n```\n{}```\n", c.at("class").get<std::string>(),
                       c.at("instances").get<std::size_t>(), render_bars(token_weights(c.at("tokens"))));
    }
  }

  if (r.contains("explanations")) {
    s += "\n## Local explanations\n";
    for (const auto& e : r["explanations"]) {
      s += fmt::format("\n### Instance {}\n\nPredicted class {} with probability {:.4f}; explained class {} ({:.4f}). "
                       "Intercept {:.4f}, local fidelity {:.4f}{}.\n\n```\n{}```\n",
                       e.at("instance_id").get<std::string>(), e.at("predicted_label").get<int>(),
                       num(e, "predicted_probability"), e.at("target_class").get<int>(), num(e, "target_probability"),
                       num(e, "intercept"), num(e, "local_fidelity"), e.at("degenerate").get<bool>() ? " (degenerate)" : "",
                       render_bars(token_weights(e.at("feature_weights"))));
    }
  }
  return s;
}

std::string report_markdown(const RunReport& report) { return render_markdown(report_json(report)); }

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

}  // namespace

void emit_report(const RunReport& report, const std::filesystem::path& dir, ReportFormats formats) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());
  if (formats.json) write_file(dir / "report.json", report_json(report).dump(2) + "\n");
  if (formats.markdown) write_file(dir / "report.md", report_markdown(report));
  if (!report.timings.empty()) write_file(dir / "timings.json", json(report.timings).dump(2) + "\n");
}

}  // namespace aitd
