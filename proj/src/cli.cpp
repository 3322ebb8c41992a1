#include "aitd/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "aitd/artifact.hpp"
#include "aitd/bench.hpp"
#include "aitd/config.hpp"
#include "aitd/error.hpp"
#include "aitd/explain.hpp"
#include "aitd/report.hpp"
#include "aitd/rng.hpp"
#include "aitd/synthetic.hpp"
#include "aitd/wikipedia.hpp"

namespace aitd {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  std::string config;
  std::string out = "out";
  bool json_output = false;
  unsigned threads = 1;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct Context {
  Globals globals;
  bool seed_given = false;
  bool threads_given = false;
  std::ostream& out;
  std::ostream& err;

  RunConfig config() const {
    RunConfig c = globals.config.empty() ? RunConfig{} : load_config(globals.config);
    if (seed_given) c.seed = globals.seed;
    if (threads_given) c.threads = globals.threads;
    return c;
  }
  fs::path out_dir() const { return globals.out; }
};

Corpus load_any(const std::string& path, RunConfig& config, const std::string& key) {
  config.paths[key] = path;
  return load_corpus(path, format_from_path(path)).corpus;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << text;
}

void finish(const Context& ctx, RunReport& report, const RunConfig& config, const json& stdout_json,
            const std::string& summary) {
  report.seed = config.seed;
  report.config = json(config);
  emit_report(report, ctx.out_dir());
  save_config(config, ctx.out_dir() / "config.json");
  if (ctx.globals.json_output) {
    ctx.out << stdout_json.dump(2) << '\n';
  } else {
    ctx.out << summary;
    ctx.out << "report written to " << (ctx.out_dir() / "report.md").string() << '\n';
  }
}

std::string metrics_summary(const std::string& name, const MetricsReport& m) {
  return fmt::format("{:<12} accuracy {:.4f}  macro-F1 {:.4f}  unrecognized {}\n", name, m.accuracy, m.macro.f1,
                     m.unrecognized_total);
}

std::vector<ModelSpec> select_models(const RunConfig& config, const std::vector<std::string>& families) {
  if (families.empty()) return config.models;
  std::vector<ModelSpec> out;
  for (const auto& f : families) {
    ModelSpec spec{f, json::object()};
    for (const auto& m : config.models) {
      if (m.family == f) spec.params = m.params;
    }
    out.push_back(std::move(spec));
  }
  return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"aitd: AI-generated text detection toolkit", "aitd"};
  app.require_subcommand(1);
  app.fallthrough();
  Context ctx{Globals{}, false, false, out, err};
  auto* seed_opt = app.add_option("--seed", ctx.globals.seed, "Master random seed");
  app.add_option("--config", ctx.globals.config, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--out", ctx.globals.out, "Output directory")->capture_default_str();
  app.add_flag("--json", ctx.globals.json_output, "Machine-readable JSON on stdout");
  auto* threads_opt = app.add_option("--threads", ctx.globals.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.set_version_flag("--version", std::string(tool_version()));

  std::function<int()> action;

  // ingest
  std::vector<std::string> ingest_inputs;
  std::string ingest_output = "corpus.jsonl";
  bool ingest_allow_empty = false;
  auto* ingest = app.add_subcommand("ingest", "Validate and merge labeled corpus files into one JSONL corpus");
  ingest->add_option("--input", ingest_inputs, "Corpus files (.jsonl or .csv)")->required()->check(CLI::ExistingFile);
  ingest->add_option("--output", ingest_output, "File name inside --out")->capture_default_str();
  ingest->add_flag("--allow-empty", ingest_allow_empty, "Accept files with no usable record");
  ingest->callback([&] {
    action = [&] {
      std::vector<Document> docs;
      std::size_t dropped = 0;
      for (const auto& path : ingest_inputs) {
        auto loaded = load_corpus(path, format_from_path(path), LoadOptions{ingest_allow_empty});
        dropped += loaded.dropped_empty;
        docs.insert(docs.end(), loaded.corpus.documents().begin(), loaded.corpus.documents().end());
      }
      const Corpus corpus(std::move(docs));
      const fs::path target = ctx.out_dir() / ingest_output;
      fs::create_directories(ctx.out_dir());
      save_corpus(corpus, target, format_from_path(target));
      json summary{{"documents", corpus.size()}, {"dropped_empty", dropped}, {"output", target.string()}};
      json classes = json::object();
      for (const auto& [label, n] : corpus.class_counts()) classes[std::string(to_string(label))] = n;
      summary["classes"] = classes;
      if (ctx.globals.json_output) {
        out << summary.dump(2) << '\n';
      } else {
        out << fmt::format("{} documents written to {} ({} empty records dropped)\n", corpus.size(), target.string(),
                           dropped);
      }
      return 0;
    };
  });

  // fetch-wiki
  std::string wiki_query, wiki_base = WikiFetchOptions{}.base_url, wiki_replay, wiki_record;
  std::size_t wiki_max = WikiFetchOptions{}.max_docs;
  bool wiki_paragraphs = false;
  auto* wiki = app.add_subcommand("fetch-wiki", "Fetch human-written Wikipedia text for a keyword");
  wiki->add_option("--query", wiki_query, "Search keyword")->required();
  wiki->add_option("--max-docs", wiki_max, "Maximum pages")->capture_default_str();
  wiki->add_option("--base-url", wiki_base, "MediaWiki base URL")->capture_default_str();
  wiki->add_flag("--paragraphs", wiki_paragraphs, "One document per paragraph");
  wiki->add_option("--replay", wiki_replay, "Serve responses from a replay file")->check(CLI::ExistingFile);
  wiki->add_option("--record", wiki_record, "Append live exchanges to a replay file");
  wiki->callback([&] {
    action = [&] {
      const RunConfig config = ctx.config();
      WikiFetchOptions options{wiki_base, wiki_max, wiki_paragraphs, config.threads};
      std::vector<Document> docs;
      if (!wiki_replay.empty()) {
        ReplayTransport replay(load_replay(wiki_replay));
        docs = fetch_wikipedia(replay, wiki_query, options);
      } else {
        HttplibTransport live;
        if (!wiki_record.empty()) {
          RecordingTransport recording(live, wiki_record);
          docs = fetch_wikipedia(recording, wiki_query, options);
        } else {
          docs = fetch_wikipedia(live, wiki_query, options);
        }
      }
      const Corpus corpus(std::move(docs));
      fs::create_directories(ctx.out_dir());
      const fs::path target = ctx.out_dir() / "wiki.jsonl";
      save_corpus(corpus, target, CorpusFormat::Jsonl);
      if (ctx.globals.json_output) {
        out << json{{"documents", corpus.size()}, {"output", target.string()}}.dump(2) << '\n';
      } else {
        out << fmt::format("{} documents written to {}\n", corpus.size(), target.string());
      }
      return 0;
    };
  });

  // stats
  std::string stats_corpus;
  std::optional<std::size_t> stats_top;
  auto* stats = app.add_subcommand("stats", "Per-class word frequencies and top TF-IDF words");
  stats->add_option("--corpus", stats_corpus, "Labeled corpus")->required()->check(CLI::ExistingFile);
  stats->add_option("--top", stats_top, "Rows per class");
  stats->callback([&] {
    action = [&] {
      RunConfig config = ctx.config();
      if (stats_top) config.top_words = *stats_top;
      const Corpus corpus = load_any(stats_corpus, config, "corpus");
      Timer timer;
      const auto tokens = preprocess_all(corpus, config.prep, config.threads);
      RunReport report;
      report.command = "stats";
      report.dataset = dataset_summary(corpus, tokens);
      report.frequencies = frequency_table(corpus, tokens, config.top_words);
      const TfidfModel tfidf = TfidfModel::fit(tokens, config.vectorizer);
      report.top_words = top_tfidf_words(corpus, tokens, tfidf, config.top_words);
      report.timings["stats"] = timer.seconds();
      fs::create_directories(ctx.out_dir());
      write_text(ctx.out_dir() / "word_frequencies.csv", frequency_csv(report.frequencies));
      write_text(ctx.out_dir() / "tfidf_words.csv", weights_csv(report.top_words));
      std::string summary;
      for (const auto& t : report.frequencies) {
        summary += fmt::format("{}: {} tokens; top word '{}'\n", to_string(t.label), t.total_tokens,
                               t.rows.empty() ? "" : t.rows.front().word);
      }
      finish(ctx, report, config,
             json{{"word_frequencies", to_json(report.frequencies)}, {"top_tfidf_words", to_json(report.top_words)}},
             summary);
      return 0;
    };
  });

  // train
  std::string train_corpus, train_granularity;
  std::vector<std::string> train_models;
  std::optional<double> train_fraction;
  auto* train = app.add_subcommand("train", "Train models on a shared stratified split and report test metrics");
  train->add_option("--corpus", train_corpus, "Labeled corpus")->required()->check(CLI::ExistingFile);
  train->add_option("--model", train_models, "Model families: tree, forest, boosted, svm, mlp")
      ->check(CLI::IsMember(model_families()));
  train->add_option("--granularity", train_granularity, "article or paragraph")
      ->check(CLI::IsMember({"article", "paragraph"}));
  train->add_option("--train-fraction", train_fraction, "Training share in (0,1)")->check(CLI::Range(0.0, 1.0));
  train->callback([&] {
    action = [&] {
      RunConfig config = ctx.config();
      config.models = select_models(config, train_models);
      if (!train_granularity.empty()) config.granularity = parse_granularity(train_granularity);
      if (train_fraction) config.train_fraction = *train_fraction;
      const Corpus corpus = load_any(train_corpus, config, "corpus");
      ExperimentSpec spec{config.granularity, config.models, config.train_fraction, config.seed,
                          config.prep,        config.vectorizer, config.threads};
      Timer timer;
      const ExperimentResult result = run_detection_experiment(corpus, spec);
      RunReport report;
      report.command = "train";
      std::vector<TokenSeq> all_tokens = result.train_tokens;
      std::vector<Document> ordered = result.split.train.documents();
      all_tokens.insert(all_tokens.end(), result.test_tokens.begin(), result.test_tokens.end());
      ordered.insert(ordered.end(), result.split.test.documents().begin(), result.split.test.documents().end());
      report.dataset = dataset_summary(Corpus(ordered), all_tokens);
      report.dataset["train_documents"] = result.split.train.size();
      report.dataset["test_documents"] = result.split.test.size();
      report.dataset["granularity"] = to_string(config.granularity);
      std::string summary;
      json stdout_models = json::array();
      fs::create_directories(ctx.out_dir());
      for (const auto& m : result.models) {
        report.models.push_back({m.family, m.metrics, m.confusion, m.roc});
        report.timings["train_" + m.family] = m.train_seconds;
        ModelArtifact artifact{result.corpus.task(), config.prep, result.tfidf, m.model, json(config)};
        const std::string name = result.models.size() == 1 ? "model.json" : "model-" + m.family + ".json";
        save_artifact(artifact, ctx.out_dir() / name);
        summary += metrics_summary(m.family, m.metrics);
        stdout_models.push_back({{"family", m.family}, {"artifact", (ctx.out_dir() / name).string()},
                                 {"metrics", to_json(m.metrics)}});
      }
      save_corpus(result.split.test, ctx.out_dir() / "test.jsonl", CorpusFormat::Jsonl);
      report.timings["total"] = timer.seconds();
      finish(ctx, report, config, json{{"models", stdout_models}}, summary);
      return 0;
    };
  });

  // evaluate
  std::string eval_model, eval_corpus;
  auto* evaluate = app.add_subcommand("evaluate", "Score a labeled corpus with a saved model");
  evaluate->add_option("--model", eval_model, "Model artifact")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--corpus", eval_corpus, "Labeled corpus")->required()->check(CLI::ExistingFile);
  evaluate->callback([&] {
    action = [&] {
      RunConfig config = ctx.config();
      config.paths["model"] = eval_model;
      const ModelArtifact artifact = load_artifact(eval_model);
      config.prep = artifact.prep;
      const Corpus corpus = load_any(eval_corpus, config, "corpus");
      if (corpus.task() != artifact.task) {
        throw Error(ErrorKind::Configuration, "corpus task does not match the model's task");
      }
      const auto tokens = preprocess_all(corpus, artifact.prep, config.threads);
      const Dataset data = make_dataset(corpus, tokens, artifact.tfidf);
      const auto predictions = artifact.model->predict_all(data.X, config.threads);
      std::vector<int> predicted;
      std::vector<double> scores;
      for (const auto& p : predictions) {
        predicted.push_back(p.label);
        scores.push_back(p.probabilities.back());
      }
      RunReport report;
      report.command = "evaluate";
      report.dataset = dataset_summary(corpus, tokens);
      ReportModel rm{artifact.model->family(), {}, confusion(data.y, predicted, class_names(corpus.task())), {}};
      rm.metrics = metrics(rm.confusion);
      if (data.n_classes == 2 && corpus.class_counts().size() == 2) rm.roc = roc(data.y, scores);
      report.models.push_back(rm);
      json stdout_json = to_json(rm.metrics);
      finish(ctx, report, config, stdout_json, metrics_summary(rm.name, rm.metrics));
      return 0;
    };
  });

  // explain
  std::string explain_model, explain_corpus;
  std::optional<std::size_t> explain_n, explain_samples;
  bool explain_global = false;
  auto* explain = app.add_subcommand("explain", "Local surrogate explanations and per-class importance");
  explain->add_option("--model", explain_model, "Model artifact")->required()->check(CLI::ExistingFile);
  explain->add_option("--corpus", explain_corpus, "Documents to explain")->required()->check(CLI::ExistingFile);
  explain->add_option("--instances", explain_n, "Documents explained individually (from the start)");
  explain->add_option("--samples", explain_samples, "Perturbation samples per document");
  explain->add_flag("--global", explain_global, "Aggregate over every document");
  explain->callback([&] {
    action = [&] {
      RunConfig config = ctx.config();
      config.paths["model"] = explain_model;
      if (explain_n) config.explain_instances = *explain_n;
      if (explain_samples) config.lime.n_samples = *explain_samples;
      const ModelArtifact artifact = load_artifact(explain_model);
      config.prep = artifact.prep;
      const Corpus corpus = load_any(explain_corpus, config, "corpus");
      const auto tokens = preprocess_all(corpus, artifact.prep, config.threads);
      LimeParams lime = config.lime;
      lime.seed = config.seed;
      lime.threads = config.threads;
      Timer timer;
      RunReport report;
      report.command = "explain";
      std::vector<Explanation> all;
      if (explain_global) {
        report.importance =
            global_importance(*artifact.model, tokens, artifact.tfidf, lime, class_names(artifact.task), 10, &all);
        for (std::size_t i = 0; i < all.size(); ++i) all[i].instance_id = corpus[i].id;
      }
      for (std::size_t i = 0; i < std::min(config.explain_instances, corpus.size()); ++i) {
        if (explain_global) {
          report.explanations.push_back(all[i]);
          continue;
        }
        LimeParams p = lime;
        p.seed = derive_seed(lime.seed, i);
        report.explanations.push_back(lime_explain(*artifact.model, tokens[i], artifact.tfidf, p, corpus[i].id));
      }
      report.timings["explain"] = timer.seconds();
      json stdout_json = json::array();
      for (const auto& e : report.explanations) stdout_json.push_back(to_json(e));
      std::string summary;
      for (const auto& e : report.explanations) {
        summary += fmt::format("{}: class {} (p={:.3f})\n{}", e.instance_id, e.predicted_label,
                               e.predicted_probability, render_bars(e.feature_weights));
      }
      finish(ctx, report, config, stdout_json, summary);
      return 0;
    };
  });

  // mix
  std::string mix_human, mix_ai, mix_human_id, mix_ai_id;
  double mix_ratio = 0.5;
  auto* mix = app.add_subcommand("mix", "Interleave sentences of a human and an AI document");
  mix->add_option("--human", mix_human, "Corpus holding the human document")->required()->check(CLI::ExistingFile);
  mix->add_option("--ai", mix_ai, "Corpus holding the AI document")->required()->check(CLI::ExistingFile);
  mix->add_option("--ratio", mix_ratio, "Target AI token share")->required()->check(CLI::Range(0.0, 1.0));
  mix->add_option("--human-id", mix_human_id, "Document id (default: first)");
  mix->add_option("--ai-id", mix_ai_id, "Document id (default: first)");
  mix->callback([&] {
    action = [&] {
      RunConfig config = ctx.config();
      const Corpus human = load_any(mix_human, config, "human");
      const Corpus ai = load_any(mix_ai, config, "ai");
      auto pick = [](const Corpus& c, const std::string& id) -> const Document& {
        if (c.empty()) throw Error(ErrorKind::EmptyCorpus, "no document to mix");
        if (id.empty()) return c[0];
        for (const auto& d : c.documents()) {
          if (d.id == id) return d;
        }
        throw Error(ErrorKind::Configuration, "document id '" + id + "' not found");
      };
      const MixResult r = synthesize_mixed(pick(human, mix_human_id), pick(ai, mix_ai_id), mix_ratio, config.seed,
                                           config.prep);
      fs::create_directories(ctx.out_dir());
      save_corpus(Corpus({r.document}), ctx.out_dir() / "mixed.jsonl", CorpusFormat::Jsonl);
      json j{{"id", r.document.id},
             {"label", to_string(r.document.label)},
             {"ai_token_ratio", r.document.ai_token_ratio},
             {"ai_tokens", r.ai_tokens},
             {"total_tokens", r.total_tokens},
             {"granularity_warning", r.granularity_warning},
             {"text", r.document.text}};
      if (ctx.globals.json_output) {
        out << j.dump(2) << '\n';
      } else {
        out << fmt::format("{} with AI share {:.4f} ({} of {} tokens){}\n", to_string(r.document.label),
                           r.document.ai_token_ratio, r.ai_tokens, r.total_tokens,
                           r.granularity_warning ? "; warning: no strictly mixed selection exists" : "");
      }
      return 0;
    };
  });

  // three-class
  std::string tc_human, tc_ai;
  std::optional<std::size_t> tc_n;
  auto* three = app.add_subcommand("three-class", "Build the PureAi / Mixed / PureHuman set and train on it");
  three->add_option("--human-pool", tc_human, "Human documents")->required()->check(CLI::ExistingFile);
  three->add_option("--ai-pool", tc_ai, "AI documents")->required()->check(CLI::ExistingFile);
  three->add_option("--n-per-class", tc_n, "Documents per class");
  three->callback([&] {
    action = [&] {
      RunConfig config = ctx.config();
      if (tc_n) config.three_class.build.n_per_class = *tc_n;
      config.three_class.build.seed = config.seed;
      config.three_class.build.prep = config.prep;
      ThreeClassSpec spec = config.three_class;
      spec.vectorizer = config.vectorizer;
      spec.threads = config.threads;
      const Corpus human = load_any(tc_human, config, "human_pool");
      const Corpus ai = load_any(tc_ai, config, "ai_pool");
      Timer timer;
      const ThreeClassResult r = run_three_class_experiment(human, ai, spec);
      fs::create_directories(ctx.out_dir());
      save_corpus(r.dataset, ctx.out_dir() / "three_class.jsonl", CorpusFormat::Jsonl);
      save_corpus(r.split.test, ctx.out_dir() / "test.jsonl", CorpusFormat::Jsonl);
      save_artifact(ModelArtifact{Task::ThreeClass, config.prep, r.tfidf, r.model, json(config)},
                    ctx.out_dir() / "model.json");
      RunReport report;
      report.command = "three-class";
      report.dataset = dataset_summary(r.dataset, preprocess_all(r.dataset, config.prep, config.threads));
      report.dataset["train_documents"] = r.split.train.size();
      report.dataset["test_documents"] = r.split.test.size();
      report.models.push_back({"boosted_ovr", r.metrics, r.confusion, std::nullopt});
      report.timings["train"] = r.train_seconds;
      report.timings["total"] = timer.seconds();
      finish(ctx, report, config, json{{"metrics", to_json(r.metrics)}, {"confusion", to_json(r.confusion)}},
             metrics_summary("boosted_ovr", r.metrics));
      return 0;
    };
  });

  // compare
  std::string cmp_test, cmp_model, cmp_local_verdicts, cmp_replay, cmp_record, cmp_external_verdicts;
  bool cmp_live = false;
  auto* compare = app.add_subcommand("compare", "Local model vs external detector on one three-class test set");
  compare->add_option("--test", cmp_test, "Three-class labeled test set")->required()->check(CLI::ExistingFile);
  auto* local_model = compare->add_option("--model", cmp_model, "Local model artifact")->check(CLI::ExistingFile);
  auto* local_fixed =
      compare->add_option("--local-verdicts", cmp_local_verdicts, "Fixed local verdicts (JSON)")->check(CLI::ExistingFile);
  local_model->excludes(local_fixed);
  auto* replay = compare->add_option("--replay", cmp_replay, "External detector replay file")->check(CLI::ExistingFile);
  auto* live = compare->add_flag("--live", cmp_live, "Call the external API (key from DETECTOR_API_KEY)");
  auto* ext_fixed = compare->add_option("--external-verdicts", cmp_external_verdicts, "Fixed external verdicts (JSON)")
                        ->check(CLI::ExistingFile);
  compare->add_option("--record", cmp_record, "Append live exchanges to a replay file")->needs(live);
  replay->excludes(live)->excludes(ext_fixed);
  live->excludes(ext_fixed);
  compare->callback([&] {
    action = [&] {
      if (cmp_model.empty() && cmp_local_verdicts.empty()) {
        throw CLI::ValidationError("compare", "one of --model or --local-verdicts is required");
      }
      if (cmp_replay.empty() && !cmp_live && cmp_external_verdicts.empty()) {
        throw CLI::ValidationError("compare", "one of --replay, --live or --external-verdicts is required");
      }
      RunConfig config = ctx.config();
      const Corpus test = load_any(cmp_test, config, "test");
      auto read_json = [](const std::string& path) {
        std::ifstream in(path);
        try {
          return json::parse(in);
        } catch (const json::exception& e) {
          throw Error(ErrorKind::ParseError, path + ": " + e.what());
        }
      };
      std::optional<ModelArtifact> artifact;
      std::unique_ptr<Detector> local;
      if (!cmp_model.empty()) {
        config.paths["model"] = cmp_model;
        artifact = load_artifact(cmp_model);
        local = std::make_unique<LocalDetector>(*artifact->model, artifact->tfidf, artifact->prep, "local");
      } else {
        config.paths["local_verdicts"] = cmp_local_verdicts;
        local = std::make_unique<FixedDetector>(FixedDetector::from_json(read_json(cmp_local_verdicts)));
      }
      std::unique_ptr<HttpTransport> transport, inner;
      std::unique_ptr<Detector> external;
      if (!cmp_external_verdicts.empty()) {
        config.paths["external_verdicts"] = cmp_external_verdicts;
        external = std::make_unique<FixedDetector>(FixedDetector::from_json(read_json(cmp_external_verdicts)));
      } else {
        if (!cmp_replay.empty()) {
          config.paths["replay"] = cmp_replay;
          transport = std::make_unique<ReplayTransport>(load_replay(cmp_replay));
        } else {
          inner = std::make_unique<HttplibTransport>();
          transport = cmp_record.empty() ? std::move(inner)
                                         : std::make_unique<RecordingTransport>(*inner, cmp_record);
        }
        external = std::make_unique<ExternalDetector>(*transport, config.external, "external");
      }
      Timer timer;
      RunReport report;
      report.command = "compare";
      report.comparison = compare_detectors(test, *local, *external);
      report.timings["compare"] = timer.seconds();
      std::string summary;
      for (const auto& d : report.comparison->detectors) summary += metrics_summary(d.name, d.metrics);
      finish(ctx, report, config, to_json(*report.comparison), summary);
      return 0;
    };
  });

  // report
  std::string report_input;
  auto* rerender = app.add_subcommand("report", "Re-render report.md from a report.json");
  rerender->add_option("--input", report_input, "report.json")->required()->check(CLI::ExistingFile);
  rerender->callback([&] {
    action = [&] {
      std::ifstream in(report_input, std::ios::binary);
      json doc;
      try {
        doc = json::parse(in);
      } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, report_input + ": " + e.what());
      }
      const std::string md = render_markdown(doc);
      fs::create_directories(ctx.out_dir());
      write_text(ctx.out_dir() / "report.md", md);
      if (ctx.globals.json_output) {
        out << json{{"output", (ctx.out_dir() / "report.md").string()}}.dump(2) << '\n';
      } else {
        out << "report written to " << (ctx.out_dir() / "report.md").string() << '\n';
      }
      return 0;
    };
  });

  // synth
  std::optional<std::size_t> syn_n, syn_paragraphs, syn_sentences;
  bool syn_pools = false;
  auto* synth = app.add_subcommand("synth", "Generate a planted-vocabulary binary corpus");
  synth->add_option("--n-per-class", syn_n, "Titles per class");
  synth->add_option("--paragraphs-per-title", syn_paragraphs, "Paragraphs per title");
  synth->add_option("--sentences", syn_sentences, "Sentences per paragraph");
  synth->add_flag("--pools", syn_pools, "Also write human_pool.jsonl and ai_pool.jsonl");
  synth->callback([&] {
    action = [&] {
      RunConfig config = ctx.config();
      SyntheticOptions o = config.synthetic;
      o.seed = config.seed;
      if (syn_n) o.n_per_class = *syn_n;
      if (syn_paragraphs) o.paragraphs_per_title = *syn_paragraphs;
      if (syn_sentences) o.sentences_per_paragraph = *syn_sentences;
      const SyntheticCorpus s = generate_synthetic(o);
      fs::create_directories(ctx.out_dir());
      save_corpus(s.corpus, ctx.out_dir() / "synthetic.jsonl", CorpusFormat::Jsonl);
      if (syn_pools) {
        std::vector<Document> human, ai;
        for (const auto& d : s.corpus.documents()) (d.label == Label::Human ? human : ai).push_back(d);
        save_corpus(Corpus(std::move(human)), ctx.out_dir() / "human_pool.jsonl", CorpusFormat::Jsonl);
        save_corpus(Corpus(std::move(ai)), ctx.out_dir() / "ai_pool.jsonl", CorpusFormat::Jsonl);
      }
      const json planted{{"options", o}, {"planted_ai", s.planted_ai}, {"planted_human", s.planted_human}};
      write_text(ctx.out_dir() / "planted.json", planted.dump(2) + "\n");
      if (ctx.globals.json_output) {
        out << json{{"documents", s.corpus.size()}, {"planted", planted}}.dump(2) << '\n';
      } else {
        out << fmt::format("{} documents written to {}\n", s.corpus.size(),
                           (ctx.out_dir() / "synthetic.jsonl").string());
      }
      return 0;
    };
  });

  if (argc <= 1) {
    err << app.help();
    return 1;
  }
  try {
    app.parse(argc, argv);
    ctx.seed_given = seed_opt->count() > 0;
    ctx.threads_given = threads_opt->count() > 0;
    return action ? action() : 1;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << tool_version() << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::Usage ? 1 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace aitd
