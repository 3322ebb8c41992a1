#include "aitd/textprep.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "aitd/error.hpp"

namespace aitd {
namespace detail {
extern const std::string_view kStopwordsEnV1;
}

namespace {

bool is_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

bool is_consonant(char c) { return c >= 'a' && c <= 'z' && !is_vowel(c); }

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool has_vowel(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) { return is_vowel(c) || c == 'y'; });
}

struct StopwordSet {
  std::vector<std::string> words;
  std::unordered_set<std::string> lookup;
};

const StopwordSet& stopwords_en_v1() {
  static const StopwordSet set = [] {
    StopwordSet s;
    std::string_view rest = detail::kStopwordsEnV1;
    while (!rest.empty()) {
      const auto eol = rest.find('\n');
      std::string_view line = rest.substr(0, eol);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (!line.empty()) s.words.emplace_back(line);
      rest = eol == std::string_view::npos ? std::string_view{} : rest.substr(eol + 1);
    }
    s.lookup.insert(s.words.begin(), s.words.end());
    return s;
  }();
  return set;
}

// Irregular forms and words the suffix rules would mangle. Identity entries
// protect a word from the rules.
const std::unordered_map<std::string_view, std::string_view>& exceptions() {
  static const std::unordered_map<std::string_view, std::string_view> table = {
      {"data", "datum"},         {"was", "be"},             {"were", "be"},
      {"is", "be"},              {"are", "be"},             {"been", "be"},
      {"being", "be"},           {"am", "be"},              {"has", "have"},
      {"had", "have"},           {"having", "have"},        {"does", "do"},
      {"did", "do"},             {"done", "do"},            {"doing", "do"},
      {"goes", "go"},            {"went", "go"},            {"gone", "go"},
      {"made", "make"},          {"used", "use"},           {"using", "use"},
      {"uses", "use"},           {"changing", "change"},    {"changed", "change"},
      {"analyses", "analysis"},  {"criteria", "criterion"}, {"phenomena", "phenomenon"},
      {"media", "medium"},       {"children", "child"},     {"men", "man"},
      {"women", "woman"},        {"mice", "mouse"},         {"feet", "foot"},
      {"teeth", "tooth"},        {"taken", "take"},         {"took", "take"},
      {"given", "give"},         {"gave", "give"},          {"known", "know"},
      {"knew", "know"},          {"shown", "show"},         {"written", "write"},
      {"wrote", "write"},        {"began", "begin"},        {"begun", "begin"},
      {"ran", "run"},            {"found", "find"},         {"built", "build"},
      {"sent", "send"},          {"kept", "keep"},          {"led", "lead"},
      {"held", "hold"},          {"brought", "bring"},      {"thought", "think"},
      {"bought", "buy"},         {"caught", "catch"},       {"taught", "teach"},
      {"said", "say"},           {"paid", "pay"},           {"laid", "lay"},
      {"meant", "mean"},         {"became", "become"},      {"chose", "choose"},
      {"chosen", "choose"},      {"stolen", "steal"},       {"stole", "steal"},
      {"hidden", "hide"},        {"broken", "break"},       {"broke", "break"},
      {"spoken", "speak"},       {"driven", "drive"},       {"grown", "grow"},
      {"grew", "grow"},          {"thrown", "throw"},       {"threw", "throw"},
      {"drawn", "draw"},         {"drew", "draw"},          {"fallen", "fall"},
      {"felt", "feel"},          {"lost", "lose"},          {"understood", "understand"},
      {"arose", "arise"},        {"arisen", "arise"},       {"creating", "create"},
      {"created", "create"},     {"caches", "cache"},       {"caching", "cache"},
      {"cached", "cache"},       {"focusing", "focus"},     {"focused", "focus"},
      {"focuses", "focus"},      {"underlying", "underlie"},
      // protected as-is
      {"always", "always"},      {"perhaps", "perhaps"},    {"whereas", "whereas"},
      {"sometimes", "sometimes"}, {"besides", "besides"},   {"afterwards", "afterwards"},
      {"nevertheless", "nevertheless"}, {"news", "news"},   {"series", "series"},
      {"species", "species"},    {"physics", "physics"},    {"mathematics", "mathematics"},
      {"economics", "economics"}, {"politics", "politics"}, {"yes", "yes"},
      {"chaos", "chaos"},        {"bias", "bias"},          {"alias", "alias"},
      {"canvas", "canvas"},      {"atlas", "atlas"},        {"gas", "gas"},
      {"lens", "lens"},          {"nothing", "nothing"},    {"something", "something"},
      {"anything", "anything"},  {"everything", "everything"}, {"morning", "morning"},
      {"evening", "evening"},    {"ceiling", "ceiling"},    {"embed", "embed"},
      {"hundred", "hundred"},    {"indeed", "indeed"},      {"focus", "focus"},
      {"wicked", "wicked"},      {"naked", "naked"},        {"sacred", "sacred"},
  };
  return table;
}

// Short consonant-vowel-consonant stem with a single vowel group ("mak", "stor").
bool short_cvc(std::string_view stem) {
  const std::size_t n = stem.size();
  if (n == 2) return is_vowel(stem[0]) && is_consonant(stem[1]);
  if (n < 3) return false;
  const char last = stem[n - 1];
  if (!is_consonant(last) || last == 'w' || last == 'x' || last == 'y') return false;
  if (!is_vowel(stem[n - 2]) || !is_consonant(stem[n - 3])) return false;
  int groups = 0;
  bool in_group = false;
  for (char c : stem) {
    const bool v = is_vowel(c);
    if (v && !in_group) ++groups;
    in_group = v;
  }
  return groups == 1;
}

// Whether a stem left by stripping -ing/-ed dropped a silent 'e'.
bool needs_silent_e(std::string_view stem) {
  const std::size_t n = stem.size();
  if (n < 2) return false;
  if (short_cvc(stem)) return true;
  const char last = stem[n - 1];
  const char prev = stem[n - 2];
  if (last == 'v') return true;
  if (n >= 4 && ends_with(stem, "at")) return true;
  if (last == 'l' && (prev == 'b' || prev == 'p' || prev == 't' || prev == 'd' || prev == 'k' || prev == 'g' ||
                      prev == 'c' || prev == 'f')) {
    return true;
  }
  if (ends_with(stem, "iz") || ends_with(stem, "yz") || ends_with(stem, "dg")) return true;
  if (ends_with(stem, "ur") || ends_with(stem, "ir")) return true;
  if (n >= 3 && is_consonant(stem[n - 3]) &&
      (ends_with(stem, "ut") || ends_with(stem, "od") || ends_with(stem, "id") || ends_with(stem, "in") ||
       ends_with(stem, "ok") || ends_with(stem, "um"))) {
    return true;
  }
  if (last == 'c' && (is_vowel(prev) || prev == 'n' || prev == 'r')) return true;
  if (last == 'g' && (is_vowel(prev) || prev == 'r')) return true;
  if (last == 's' && prev != 's' && prev != 'u') return true;
  if (last == 'z' && prev != 'z') return true;
  return false;
}

std::string restore_stem(std::string stem) {
  const std::size_t n = stem.size();
  if (n >= 2 && stem[n - 1] == stem[n - 2] && is_consonant(stem[n - 1]) && stem[n - 1] != 'l' &&
      stem[n - 1] != 's' && stem[n - 1] != 'z') {
    stem.pop_back();
    return stem;
  }
  if (needs_silent_e(stem)) stem.push_back('e');
  return stem;
}

// One application of the exception table or the first matching suffix rule.
std::string lemmatize_once(std::string_view word) {
  if (const auto it = exceptions().find(word); it != exceptions().end()) return std::string(it->second);
  const std::size_t n = word.size();

  if (n > 4 && ends_with(word, "ies")) return std::string(word.substr(0, n - 3)) + "y";
  if (n > 4 && ends_with(word, "ied")) return std::string(word.substr(0, n - 3)) + "y";

  if (ends_with(word, "es") && n >= 5) {
    const std::string_view stem = word.substr(0, n - 2);
    if (ends_with(stem, "ss") || ends_with(stem, "us") || ends_with(stem, "x") || ends_with(stem, "ch") ||
        ends_with(stem, "sh")) {
      return std::string(stem);
    }
  }
  if (n >= 4 && word.back() == 's' && !ends_with(word, "ss") && !ends_with(word, "us") && !ends_with(word, "is")) {
    return std::string(word.substr(0, n - 1));
  }
  if (n >= 5 && ends_with(word, "ing")) {
    const std::string_view stem = word.substr(0, n - 3);
    if (stem.size() >= 2 && has_vowel(stem)) return restore_stem(std::string(stem));
  }
  if (n >= 5 && ends_with(word, "ed") && !ends_with(word, "eed")) {
    const std::string_view stem = word.substr(0, n - 2);
    if (stem.size() >= 3 && has_vowel(stem)) return restore_stem(std::string(stem));
  }
  return std::string(word);
}

}  // namespace

void to_json(nlohmann::json& j, const PrepConfig& config) {
  j = nlohmann::json{{"lowercase", config.lowercase},
                     {"remove_punctuation", config.remove_punctuation},
                     {"remove_stopwords", config.remove_stopwords},
                     {"lemmatize", config.lemmatize},
                     {"stopword_list_version", config.stopword_list_version}};
}

void from_json(const nlohmann::json& j, PrepConfig& config) {
  PrepConfig defaults;
  config.lowercase = j.value("lowercase", defaults.lowercase);
  config.remove_punctuation = j.value("remove_punctuation", defaults.remove_punctuation);
  config.remove_stopwords = j.value("remove_stopwords", defaults.remove_stopwords);
  config.lemmatize = j.value("lemmatize", defaults.lemmatize);
  config.stopword_list_version = j.value("stopword_list_version", defaults.stopword_list_version);
  stopword_list(config.stopword_list_version);  // validates the version
}

const std::vector<std::string>& stopword_list(std::string_view list_version) {
  if (list_version != kStopwordListVersion) {
    throw Error(ErrorKind::Configuration, "unknown stopword list version '" + std::string(list_version) + "'");
  }
  return stopwords_en_v1().words;
}

bool is_stopword(std::string_view token, std::string_view list_version) {
  stopword_list(list_version);
  return stopwords_en_v1().lookup.contains(std::string(token));
}

TokenSeq tokenize(std::string_view text) {
  TokenSeq tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && !is_alnum(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && is_alnum(text[i])) ++i;
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

std::string lemmatize(std::string_view token) {
  std::string current(token);
  // Each step either hits the table or strictly shortens the word (an
  // e-restoration always follows a removal of at least two letters).
  for (int step = 0; step < 16; ++step) {
    std::string next = lemmatize_once(current);
    if (next == current) break;
    current = std::move(next);
  }
  return current.empty() ? std::string(token) : current;
}

std::string join_tokens(const TokenSeq& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

TokenSeq preprocess(std::string_view text, const PrepConfig& config) {
  std::string buffer(text);
  if (config.lowercase) {
    std::transform(buffer.begin(), buffer.end(), buffer.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  }

  TokenSeq raw;
  if (config.remove_punctuation) {
    raw = tokenize(buffer);
  } else {
    std::size_t i = 0;
    while (i < buffer.size()) {
      while (i < buffer.size() && std::isspace(static_cast<unsigned char>(buffer[i]))) ++i;
      const std::size_t start = i;
      while (i < buffer.size() && !std::isspace(static_cast<unsigned char>(buffer[i]))) ++i;
      if (i > start) raw.emplace_back(buffer.substr(start, i - start));
    }
  }

  const auto lowered = [](const std::string& t) {
    std::string l(t);
    std::transform(l.begin(), l.end(), l.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return l;
  };
  const auto lemmatizable = [](const std::string& t) {
    return std::all_of(t.begin(), t.end(), [](char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'); });
  };

  TokenSeq out;
  out.reserve(raw.size());
  for (auto& token : raw) {
    if (config.remove_stopwords && is_stopword(lowered(token), config.stopword_list_version)) continue;
    if (config.lemmatize && lemmatizable(token)) {
      token = lemmatize(token);
      if (config.remove_stopwords && is_stopword(token, config.stopword_list_version)) continue;
    }
    out.push_back(std::move(token));
  }
  return out;
}

}  // namespace aitd
