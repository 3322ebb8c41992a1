#pragma once

// Deterministic text normalization: lowercase, tokenize, drop stopwords,
// lemmatize. The configuration is stored inside every model artifact so
// inference always sees the same token stream as training.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace aitd {

using TokenSeq = std::vector<std::string>;

inline constexpr std::string_view kStopwordListVersion = "en-v1";

struct PrepConfig {
  bool lowercase = true;
  bool remove_punctuation = true;
  bool remove_stopwords = true;
  bool lemmatize = true;
  std::string stopword_list_version = std::string(kStopwordListVersion);

  friend bool operator==(const PrepConfig&, const PrepConfig&) = default;
};

void to_json(nlohmann::json& j, const PrepConfig& config);
void from_json(const nlohmann::json& j, PrepConfig& config);

/// lowercase -> split on non-alphanumeric runs -> drop stopwords -> lemmatize.
/// Tokens whose lemma is itself a stopword are dropped as well, so the output
/// never contains a stopword and re-preprocessing the joined output is a no-op.
TokenSeq preprocess(std::string_view text, const PrepConfig& config = {});

/// Splits on runs of non-alphanumeric bytes (ASCII letters and digits only).
TokenSeq tokenize(std::string_view text);

/// Dictionary form via the irregular-form table, then ordered suffix rules,
/// iterated to a fixed point. Expects a lowercase alphanumeric token.
std::string lemmatize(std::string_view token);

bool is_stopword(std::string_view token, std::string_view list_version = kStopwordListVersion);

/// The frozen list, one entry per line of the shipped resource file.
const std::vector<std::string>& stopword_list(std::string_view list_version = kStopwordListVersion);

std::string join_tokens(const TokenSeq& tokens);

}  // namespace aitd
