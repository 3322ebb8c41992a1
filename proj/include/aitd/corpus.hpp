#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "aitd/textprep.hpp"

namespace aitd {

// Binary task: ChatGpt = 0, Human = 1. Three-class task: PureAi = 0,
// Mixed = 1, PureHuman = 2 (see class_index).
enum class Label { ChatGpt, Human, PureAi, Mixed, PureHuman };

enum class Task { Binary, ThreeClass };

enum class Source { WikipediaApi, LlmGenerated, Synthesized, File };

std::string_view to_string(Label label);
std::string_view to_string(Source source);
std::string_view to_string(Task task);
Label parse_label(std::string_view text);
Source parse_source(std::string_view text);
Task parse_task(std::string_view text);

Task task_of(Label label);
int class_index(Label label);
Label label_from_index(Task task, int index);
int class_count(Task task);
std::vector<std::string> class_names(Task task);

struct Document {
  std::string id;
  std::string title;
  std::string text;
  Label label = Label::Human;
  Source source = Source::File;
  /// Share of AI tokens: 1 for AI/PureAi, 0 for Human/PureHuman, strictly
  /// between for Mixed.
  double ai_token_ratio = 0.0;

  friend bool operator==(const Document&, const Document&) = default;
};

double default_ai_ratio(Label label);

/// Immutable labeled collection. Construction validates unique ids, nonempty
/// text, a single task, and the Mixed ratio invariant.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<Document> documents);

  const std::vector<Document>& documents() const { return documents_; }
  std::size_t size() const { return documents_.size(); }
  bool empty() const { return documents_.empty(); }
  const Document& operator[](std::size_t i) const { return documents_[i]; }

  /// Task of the first document; Binary for an empty corpus.
  Task task() const { return task_; }
  const std::map<Label, std::size_t>& class_counts() const { return class_counts_; }
  std::size_t count(Label label) const;

  std::vector<int> class_indices() const;

 private:
  std::vector<Document> documents_;
  std::map<Label, std::size_t> class_counts_;
  Task task_ = Task::Binary;
};

enum class CorpusFormat { Jsonl, Csv };

CorpusFormat format_from_path(const std::filesystem::path& path);

struct LoadResult {
  Corpus corpus;
  std::size_t dropped_empty = 0;
};

struct LoadOptions {
  bool allow_empty = false;
};

/// Drops records whose text is blank and reports how many were dropped.
LoadResult load_corpus(const std::filesystem::path& path, CorpusFormat format, const LoadOptions& options = {});
LoadResult parse_corpus(std::string_view content, CorpusFormat format, const LoadOptions& options = {});

void save_corpus(const Corpus& corpus, const std::filesystem::path& path, CorpusFormat format);
std::string serialize_corpus(const Corpus& corpus, CorpusFormat format);

struct SplitResult {
  Corpus train;
  Corpus test;
  std::uint64_t seed = 0;
  double train_fraction = 0.0;
};

/// Per-class shuffled split. Each class gets floor(fraction * count) training
/// documents; the remaining round(fraction * total) - sum(floors) slots go to
/// the classes with the largest fractional parts (ties: lowest class index).
/// Output documents keep their input order.
SplitResult stratified_split(const Corpus& corpus, double train_fraction, std::uint64_t seed);

/// Per-class training counts the split rule produces, exposed for checking.
std::map<Label, std::size_t> stratified_train_counts(const std::map<Label, std::size_t>& class_counts,
                                                     double train_fraction);

/// Sentence = maximal substring ending in '.', '!' or '?' (plus the trailing
/// whitespace); a final unterminated run is its own sentence. Concatenating
/// the pieces reproduces the input exactly.
std::vector<std::string> split_sentences(std::string_view text);

struct MixResult {
  Document document;
  /// Target was strictly between 0 and 1 but no mixed selection exists.
  bool granularity_warning = false;
  std::size_t ai_tokens = 0;
  std::size_t total_tokens = 0;
};

/// Interleaves whole sentences: slot i carries either the i-th human or the
/// i-th AI sentence (an absent sentence leaves the slot empty). The achieved
/// AI token share is the achievable share nearest target_ratio (ties: lower
/// share); when the target is strictly inside (0, 1) only strictly mixed
/// shares are candidates if any exist. Among selections reaching that share,
/// the seed picks one uniformly.
MixResult synthesize_mixed(const Document& human_doc, const Document& ai_doc, double target_ratio,
                           std::uint64_t seed, const PrepConfig& config = {});

struct ThreeClassOptions {
  std::size_t n_per_class = 200;
  double ratio_low = 0.01;
  double ratio_high = 0.99;
  std::uint64_t seed = 0;
  PrepConfig prep;
};

/// n PureAi (untouched AI texts), n PureHuman (untouched human texts) and n
/// Mixed documents with targets uniform in [low, high]. Pools are shuffled per
/// seed; pure documents and mixing pairs never share a source document.
Corpus build_three_class_set(const Corpus& human_pool, const Corpus& ai_pool, const ThreeClassOptions& options);

/// Concatenates documents that share (label, title) into one document each,
/// in order of first appearance.
Corpus concatenate_by_title(const Corpus& corpus);

}  // namespace aitd
