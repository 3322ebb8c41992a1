#include "aitd/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "aitd/error.hpp"
#include "aitd/rng.hpp"
#include "aitd/textprep.hpp"

namespace aitd {

using nlohmann::json;

void to_json(json& j, const SyntheticOptions& o) {
  j = json{{"n_per_class", o.n_per_class},
           {"paragraphs_per_title", o.paragraphs_per_title},
           {"sentences_per_paragraph", o.sentences_per_paragraph},
           {"words_per_sentence", o.words_per_sentence},
           {"planted_per_class", o.planted_per_class},
           {"background_words", o.background_words},
           {"planted_rate", o.planted_rate},
           {"zipf_exponent", o.zipf_exponent},
           {"seed", o.seed}};
}

void from_json(const json& j, SyntheticOptions& o) {
  const SyntheticOptions d;
  o.n_per_class = j.value("n_per_class", d.n_per_class);
  o.paragraphs_per_title = j.value("paragraphs_per_title", d.paragraphs_per_title);
  o.sentences_per_paragraph = j.value("sentences_per_paragraph", d.sentences_per_paragraph);
  o.words_per_sentence = j.value("words_per_sentence", d.words_per_sentence);
  o.planted_per_class = j.value("planted_per_class", d.planted_per_class);
  o.background_words = j.value("background_words", d.background_words);
  o.planted_rate = j.value("planted_rate", d.planted_rate);
  o.zipf_exponent = j.value("zipf_exponent", d.zipf_exponent);
  o.seed = j.value("seed", d.seed);
}

namespace {

std::string pseudo_word(Rng& rng) {
  static constexpr std::string_view kConsonants = "bdfgklmnprtvz";
  static constexpr std::string_view kVowels = "aiou";
  const std::size_t syllables = 2 + rng.below(2);
  std::string w;
  for (std::size_t s = 0; s < syllables; ++s) {
    w.push_back(kConsonants[rng.below(kConsonants.size())]);
    w.push_back(kVowels[rng.below(kVowels.size())]);
  }
  return w;
}

std::vector<std::string> draw_words(std::size_t count, Rng& rng, std::set<std::string>& used) {
  std::vector<std::string> out;
  while (out.size() < count) {
    std::string w = pseudo_word(rng);
    if (used.count(w) || is_stopword(w) || lemmatize(w) != w) continue;
    used.insert(w);
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace

SyntheticCorpus generate_synthetic(const SyntheticOptions& o) {
  if (o.n_per_class == 0 || o.paragraphs_per_title == 0 || o.sentences_per_paragraph == 0 ||
      o.words_per_sentence == 0 || o.background_words == 0) {
    throw Error(ErrorKind::Configuration, "synthetic corpus sizes must be >= 1");
  }
  if (o.planted_rate < 0.0 || o.planted_rate > 1.0) throw Error(ErrorKind::Configuration, "planted_rate in [0,1]");
  if (o.planted_rate > 0.0 && o.planted_per_class == 0) {
    throw Error(ErrorKind::Configuration, "planted_rate > 0 needs planted words");
  }
  Rng rng(o.seed);
  std::set<std::string> used;
  SyntheticCorpus out;
  out.planted_ai = draw_words(o.planted_per_class, rng, used);
  out.planted_human = draw_words(o.planted_per_class, rng, used);
  out.background = draw_words(o.background_words, rng, used);

  std::vector<double> cdf(o.background_words);
  double acc = 0.0;
  for (std::size_t r = 0; r < o.background_words; ++r) {
    acc += 1.0 / std::pow(static_cast<double>(r + 1), o.zipf_exponent);
    cdf[r] = acc;
  }
  for (auto& c : cdf) c /= acc;

  std::vector<Document> docs;
  for (const Label label : {Label::ChatGpt, Label::Human}) {
    const auto& planted = label == Label::ChatGpt ? out.planted_ai : out.planted_human;
    const std::string tag(to_string(label));
    for (std::size_t t = 0; t < o.n_per_class; ++t) {
      for (std::size_t p = 0; p < o.paragraphs_per_title; ++p) {
        std::string text;
        for (std::size_t s = 0; s < o.sentences_per_paragraph; ++s) {
          if (s) text.push_back(' ');
          for (std::size_t w = 0; w < o.words_per_sentence; ++w) {
            std::string word;
            if (rng.bernoulli(o.planted_rate)) {
              word = planted[rng.below(planted.size())];
            } else {
              const auto it = std::lower_bound(cdf.begin(), cdf.end(), rng.uniform());
              word = out.background[std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()),
                                                          o.background_words - 1)];
            }
            if (w == 0) word[0] = static_cast<char>(word[0] - 'a' + 'A');
            if (w) text.push_back(' ');
            text += word;
          }
          text.push_back('.');
        }
        Document d;
        d.id = "synth:" + tag + ":" + std::to_string(t) + ":" + std::to_string(p);
        d.title = tag + "-" + std::to_string(t);
        d.text = std::move(text);
        d.label = label;
        d.source = Source::Synthesized;
        d.ai_token_ratio = default_ai_ratio(label);
        docs.push_back(std::move(d));
      }
    }
  }
  out.corpus = Corpus(std::move(docs));
  return out;
}

}  // namespace aitd
