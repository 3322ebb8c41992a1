#pragma once

// Vocabulary, TF-IDF vectorization, and the per-class descriptive tables
// (word frequencies, aggregate TF-IDF weights).

#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "aitd/corpus.hpp"
#include "aitd/sparse.hpp"
#include "aitd/textprep.hpp"

namespace aitd {

/// Frozen term <-> index map; indices are dense and follow lexicographic term order.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(std::vector<std::string> terms, std::vector<std::size_t> document_frequency, std::size_t n_docs_fitted);

  std::size_t size() const { return terms_.size(); }
  const std::string& term(std::size_t index) const { return terms_[index]; }
  const std::vector<std::string>& terms() const { return terms_; }
  std::optional<std::uint32_t> index_of(const std::string& term) const;
  std::size_t document_frequency(std::size_t index) const { return df_[index]; }
  const std::vector<std::size_t>& document_frequencies() const { return df_; }
  std::size_t n_docs_fitted() const { return n_docs_; }

 private:
  std::vector<std::string> terms_;
  std::vector<std::size_t> df_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::size_t n_docs_ = 0;
};

/// Keeps terms with df >= min_df; with max_features, the most frequent terms
/// by total count (ties lexicographic).
Vocabulary fit_vocabulary(std::span<const TokenSeq> docs, std::size_t min_df = 1,
                          std::optional<std::size_t> max_features = std::nullopt);

enum class Norm { L2, None };

struct VectorizerOptions {
  std::size_t min_df = 1;
  std::optional<std::size_t> max_features;
  Norm norm = Norm::L2;

  friend bool operator==(const VectorizerOptions&, const VectorizerOptions&) = default;
};

void to_json(nlohmann::json& j, const VectorizerOptions& options);
void from_json(const nlohmann::json& j, VectorizerOptions& options);

/// idf(t) = ln((1 + N) / (1 + df(t))) + 1; weight = count * idf, then the
/// chosen normalization. Out-of-vocabulary tokens are ignored.
class TfidfModel {
 public:
  TfidfModel() = default;
  TfidfModel(Vocabulary vocabulary, Norm norm);

  static TfidfModel fit(std::span<const TokenSeq> docs, const VectorizerOptions& options = {});

  const Vocabulary& vocabulary() const { return vocabulary_; }
  const std::vector<double>& idf() const { return idf_; }
  Norm norm() const { return norm_; }
  std::size_t dimension() const { return vocabulary_.size(); }

  SparseVector transform(const TokenSeq& tokens) const;
  /// count * idf without normalization.
  SparseVector raw_weights(const TokenSeq& tokens) const;
  SparseMatrix transform_all(std::span<const TokenSeq> docs) const;

  nlohmann::json to_json() const;
  static TfidfModel from_json(const nlohmann::json& j);

 private:
  Vocabulary vocabulary_;
  std::vector<double> idf_;
  Norm norm_ = Norm::L2;
};

struct FrequencyRow {
  std::string word;
  std::size_t count = 0;
  double percentage = 0.0;
};

struct ClassFrequencies {
  Label label;
  std::size_t total_tokens = 0;
  std::vector<FrequencyRow> rows;
};

/// Top words per class present in the corpus; percentage = 100 * count /
/// class token total. Rows by count descending, ties lexicographic.
std::vector<ClassFrequencies> frequency_table(const Corpus& corpus, const PrepConfig& config, std::size_t top_k);
std::vector<ClassFrequencies> frequency_table(const Corpus& corpus, std::span<const TokenSeq> tokens,
                                              std::size_t top_k);

struct WeightRow {
  std::string word;
  double weight = 0.0;
};

struct ClassWeights {
  Label label;
  std::vector<WeightRow> rows;
};

/// Terms ranked per class by the sum over that class's documents of
/// unnormalized count * idf.
std::vector<ClassWeights> top_tfidf_words(const Corpus& corpus, const TfidfModel& model, const PrepConfig& config,
                                          std::size_t top_k);
std::vector<ClassWeights> top_tfidf_words(const Corpus& corpus, std::span<const TokenSeq> tokens,
                                          const TfidfModel& model, std::size_t top_k);

nlohmann::json to_json(const std::vector<ClassFrequencies>& tables);
nlohmann::json to_json(const std::vector<ClassWeights>& tables);
std::string frequency_csv(const std::vector<ClassFrequencies>& tables);
std::string weights_csv(const std::vector<ClassWeights>& tables);

std::vector<TokenSeq> preprocess_all(const Corpus& corpus, const PrepConfig& config, unsigned threads = 1);

}  // namespace aitd
