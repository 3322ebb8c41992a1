#pragma once

// Planted-vocabulary corpus generator: every word is either a class-specific
// planted word or a Zipf-distributed background word shared by both classes.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "aitd/corpus.hpp"

namespace aitd {

struct SyntheticOptions {
  /// Titles per class; each title yields paragraphs_per_title documents.
  std::size_t n_per_class = 500;
  std::size_t paragraphs_per_title = 1;
  std::size_t sentences_per_paragraph = 1;
  std::size_t words_per_sentence = 14;
  std::size_t planted_per_class = 15;
  std::size_t background_words = 2000;
  /// Probability that a word slot holds a planted word of the document's class.
  double planted_rate = 0.3;
  double zipf_exponent = 1.0;
  std::uint64_t seed = 0;
};

void to_json(nlohmann::json& j, const SyntheticOptions& o);
void from_json(const nlohmann::json& j, SyntheticOptions& o);

struct SyntheticCorpus {
  /// Binary labels: ChatGpt documents first, then Human.
  Corpus corpus;
  std::vector<std::string> planted_ai;
  std::vector<std::string> planted_human;
  std::vector<std::string> background;
};

/// Pseudo-words are pairwise distinct, not stopwords, and unchanged by
/// preprocessing, so every planted word survives as its own feature.
SyntheticCorpus generate_synthetic(const SyntheticOptions& options);

}  // namespace aitd
