#include "aitd/features.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "aitd/error.hpp"
#include "aitd/parallel.hpp"
#include "aitd/simd/kernels.hpp"

namespace aitd {

using nlohmann::json;

Vocabulary::Vocabulary(std::vector<std::string> terms, std::vector<std::size_t> document_frequency,
                       std::size_t n_docs_fitted)
    : terms_(std::move(terms)), df_(std::move(document_frequency)), n_docs_(n_docs_fitted) {
  if (terms_.size() != df_.size()) throw Error(ErrorKind::ParseError, "vocabulary terms/df length mismatch");
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i > 0 && !(terms_[i - 1] < terms_[i])) throw Error(ErrorKind::ParseError, "vocabulary not sorted/unique");
    if (df_[i] == 0) throw Error(ErrorKind::ParseError, "vocabulary term '" + terms_[i] + "' has df 0");
    index_.emplace(terms_[i], static_cast<std::uint32_t>(i));
  }
}

std::optional<std::uint32_t> Vocabulary::index_of(const std::string& term) const {
  const auto it = index_.find(term);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vocabulary fit_vocabulary(std::span<const TokenSeq> docs, std::size_t min_df, std::optional<std::size_t> max_features) {
  if (docs.empty()) throw Error(ErrorKind::EmptyInput, "no documents to fit a vocabulary on");
  std::map<std::string, std::pair<std::size_t, std::size_t>> stats;  // term -> (df, total count)
  for (const auto& doc : docs) {
    std::vector<std::string> distinct(doc.begin(), doc.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (const auto& t : distinct) ++stats[t].first;
    for (const auto& t : doc) ++stats[t].second;
  }
  std::vector<std::pair<std::string, std::pair<std::size_t, std::size_t>>> kept;
  for (auto& [term, s] : stats) {
    if (s.first >= std::max<std::size_t>(min_df, 1)) kept.emplace_back(term, s);
  }
  if (max_features && kept.size() > *max_features) {
    std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
      if (a.second.second != b.second.second) return a.second.second > b.second.second;
      return a.first < b.first;
    });
    kept.resize(*max_features);
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  if (kept.empty()) throw Error(ErrorKind::AllTermsFiltered, "no term survives min_df/max_features");
  std::vector<std::string> terms;
  std::vector<std::size_t> df;
  for (auto& [term, s] : kept) {
    terms.push_back(term);
    df.push_back(s.first);
  }
  return Vocabulary(std::move(terms), std::move(df), docs.size());
}

void to_json(json& j, const VectorizerOptions& options) {
  j = json{{"min_df", options.min_df},
           {"max_features", options.max_features ? json(*options.max_features) : json(nullptr)},
           {"norm", options.norm == Norm::L2 ? "l2" : "none"}};
}

void from_json(const json& j, VectorizerOptions& options) {
  options.min_df = j.value("min_df", std::size_t{1});
  if (j.contains("max_features") && !j["max_features"].is_null()) {
    options.max_features = j["max_features"].get<std::size_t>();
  } else {
    options.max_features.reset();
  }
  const auto norm = j.value("norm", std::string("l2"));
  if (norm != "l2" && norm != "none") throw Error(ErrorKind::Configuration, "unknown norm '" + norm + "'");
  options.norm = norm == "l2" ? Norm::L2 : Norm::None;
}

TfidfModel::TfidfModel(Vocabulary vocabulary, Norm norm) : vocabulary_(std::move(vocabulary)), norm_(norm) {
  const auto n = static_cast<double>(vocabulary_.n_docs_fitted());
  idf_.reserve(vocabulary_.size());
  for (std::size_t i = 0; i < vocabulary_.size(); ++i) {
    const auto df = static_cast<double>(vocabulary_.document_frequency(i));
    idf_.push_back(std::log((1.0 + n) / (1.0 + df)) + 1.0);
  }
}

TfidfModel TfidfModel::fit(std::span<const TokenSeq> docs, const VectorizerOptions& options) {
  return TfidfModel(fit_vocabulary(docs, options.min_df, options.max_features), options.norm);
}

SparseVector TfidfModel::raw_weights(const TokenSeq& tokens) const {
  std::vector<std::uint32_t> hits;
  hits.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (const auto idx = vocabulary_.index_of(t)) hits.push_back(*idx);
  }
  std::sort(hits.begin(), hits.end());
  SparseVector v;
  v.dim = dimension();
  for (std::size_t i = 0; i < hits.size();) {
    std::size_t j = i;
    while (j < hits.size() && hits[j] == hits[i]) ++j;
    v.indices.push_back(hits[i]);
    v.values.push_back(static_cast<double>(j - i) * idf_[hits[i]]);
    i = j;
  }
  return v;
}

SparseVector TfidfModel::transform(const TokenSeq& tokens) const {
  SparseVector v = raw_weights(tokens);
  if (norm_ == Norm::L2 && !v.empty()) {
    const double length = std::sqrt(simd::sum_squares(v.values));
    simd::scale(1.0 / length, v.values);
  }
  return v;
}

SparseMatrix TfidfModel::transform_all(std::span<const TokenSeq> docs) const {
  SparseMatrix m(dimension());
  for (const auto& d : docs) m.add_row(transform(d));
  return m;
}

json TfidfModel::to_json() const {
  return json{{"terms", vocabulary_.terms()},
              {"df", vocabulary_.document_frequencies()},
              {"n_docs", vocabulary_.n_docs_fitted()},
              {"idf", idf_},
              {"norm", norm_ == Norm::L2 ? "l2" : "none"}};
}

TfidfModel TfidfModel::from_json(const json& j) {
  try {
    Vocabulary vocab(j.at("terms").get<std::vector<std::string>>(), j.at("df").get<std::vector<std::size_t>>(),
                     j.at("n_docs").get<std::size_t>());
    TfidfModel model(std::move(vocab), j.at("norm").get<std::string>() == "l2" ? Norm::L2 : Norm::None);
    if (j.contains("idf")) {
      const auto stored = j["idf"].get<std::vector<double>>();
      if (stored != model.idf_) throw Error(ErrorKind::ParseError, "stored idf does not match df/N");
    }
    return model;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("tfidf model: ") + e.what());
  }
}

std::vector<TokenSeq> preprocess_all(const Corpus& corpus, const PrepConfig& config, unsigned threads) {
  std::vector<TokenSeq> out(corpus.size());
  parallel_for(corpus.size(), threads, [&](std::size_t i) { out[i] = preprocess(corpus[i].text, config); });
  return out;
}

namespace {

std::vector<Label> labels_present(const Corpus& corpus) {
  std::vector<Label> labels;
  for (const auto& [label, n] : corpus.class_counts()) {
    if (n > 0) labels.push_back(label);
  }
  std::sort(labels.begin(), labels.end(), [](Label a, Label b) { return class_index(a) < class_index(b); });
  return labels;
}

}  // namespace

std::vector<ClassFrequencies> frequency_table(const Corpus& corpus, std::span<const TokenSeq> tokens,
                                              std::size_t top_k) {
  if (corpus.empty()) throw Error(ErrorKind::EmptyCorpus, "frequency table of an empty corpus");
  std::vector<ClassFrequencies> tables;
  for (Label label : labels_present(corpus)) {
    std::map<std::string, std::size_t> counts;
    std::size_t total = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (corpus[i].label != label) continue;
      for (const auto& t : tokens[i]) ++counts[t];
      total += tokens[i].size();
    }
    if (total == 0) throw Error(ErrorKind::EmptyClass, "class '" + std::string(to_string(label)) + "' has no tokens");
    std::vector<FrequencyRow> rows;
    for (const auto& [word, count] : counts) {
      rows.push_back({word, count, 100.0 * static_cast<double>(count) / static_cast<double>(total)});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.count > b.count; });
    if (rows.size() > top_k) rows.resize(top_k);
    tables.push_back({label, total, std::move(rows)});
  }
  return tables;
}

std::vector<ClassFrequencies> frequency_table(const Corpus& corpus, const PrepConfig& config, std::size_t top_k) {
  const auto tokens = preprocess_all(corpus, config);
  return frequency_table(corpus, tokens, top_k);
}

std::vector<ClassWeights> top_tfidf_words(const Corpus& corpus, std::span<const TokenSeq> tokens,
                                          const TfidfModel& model, std::size_t top_k) {
  if (corpus.empty()) throw Error(ErrorKind::EmptyCorpus, "top words of an empty corpus");
  std::vector<ClassWeights> tables;
  for (Label label : labels_present(corpus)) {
    std::vector<double> sums(model.dimension(), 0.0);
    bool any = false;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (corpus[i].label != label) continue;
      const auto v = model.raw_weights(tokens[i]);
      for (std::size_t k = 0; k < v.nnz(); ++k) sums[v.indices[k]] += v.values[k];
      any = any || !v.empty();
    }
    if (!any) throw Error(ErrorKind::EmptyClass, "class '" + std::string(to_string(label)) + "' has no weighted terms");
    std::vector<WeightRow> rows;
    for (std::size_t t = 0; t < sums.size(); ++t) {
      if (sums[t] > 0.0) rows.push_back({model.vocabulary().term(t), sums[t]});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.weight > b.weight; });
    if (rows.size() > top_k) rows.resize(top_k);
    tables.push_back({label, std::move(rows)});
  }
  return tables;
}

std::vector<ClassWeights> top_tfidf_words(const Corpus& corpus, const TfidfModel& model, const PrepConfig& config,
                                          std::size_t top_k) {
  const auto tokens = preprocess_all(corpus, config);
  return top_tfidf_words(corpus, tokens, model, top_k);
}

json to_json(const std::vector<ClassFrequencies>& tables) {
  json out = json::array();
  for (const auto& t : tables) {
    json rows = json::array();
    for (const auto& r : t.rows) rows.push_back({{"word", r.word}, {"count", r.count}, {"percentage", r.percentage}});
    out.push_back({{"class", to_string(t.label)}, {"total_tokens", t.total_tokens}, {"rows", rows}});
  }
  return out;
}

json to_json(const std::vector<ClassWeights>& tables) {
  json out = json::array();
  for (const auto& t : tables) {
    json rows = json::array();
    for (const auto& r : t.rows) rows.push_back({{"word", r.word}, {"weight", r.weight}});
    out.push_back({{"class", to_string(t.label)}, {"rows", rows}});
  }
  return out;
}

std::string frequency_csv(const std::vector<ClassFrequencies>& tables) {
  std::ostringstream os;
  os << "class,word,count,percentage\n";
  os.precision(6);
  for (const auto& t : tables) {
    for (const auto& r : t.rows) os << to_string(t.label) << ',' << r.word << ',' << r.count << ',' << std::fixed << r.percentage << '\n';
  }
  return os.str();
}

std::string weights_csv(const std::vector<ClassWeights>& tables) {
  std::ostringstream os;
  os << "class,word,weight\n";
  os.precision(6);
  for (const auto& t : tables) {
    for (const auto& r : t.rows) os << to_string(t.label) << ',' << r.word << ',' << std::fixed << r.weight << '\n';
  }
  return os.str();
}

}  // namespace aitd
