#include "aitd/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "aitd/error.hpp"
#include "aitd/rng.hpp"

namespace aitd {

using nlohmann::json;

std::string_view to_string(Label label) {
  switch (label) {
    case Label::ChatGpt: return "chatgpt";
    case Label::Human: return "human";
    case Label::PureAi: return "pure_ai";
    case Label::Mixed: return "mixed";
    case Label::PureHuman: return "pure_human";
  }
  return "?";
}

std::string_view to_string(Source source) {
  switch (source) {
    case Source::WikipediaApi: return "wikipedia_api";
    case Source::LlmGenerated: return "llm_generated";
    case Source::Synthesized: return "synthesized";
    case Source::File: return "file";
  }
  return "?";
}

std::string_view to_string(Task task) { return task == Task::Binary ? "binary" : "three_class"; }

Label parse_label(std::string_view text) {
  if (text == "chatgpt") return Label::ChatGpt;
  if (text == "human") return Label::Human;
  if (text == "pure_ai") return Label::PureAi;
  if (text == "mixed") return Label::Mixed;
  if (text == "pure_human") return Label::PureHuman;
  throw Error(ErrorKind::UnknownLabel, "'" + std::string(text) + "'");
}

Source parse_source(std::string_view text) {
  if (text == "wikipedia_api" || text == "wikipedia") return Source::WikipediaApi;
  if (text == "llm_generated" || text == "llm") return Source::LlmGenerated;
  if (text == "synthesized") return Source::Synthesized;
  if (text == "file" || text.empty()) return Source::File;
  throw Error(ErrorKind::ParseError, "unknown source '" + std::string(text) + "'");
}

Task parse_task(std::string_view text) {
  if (text == "binary") return Task::Binary;
  if (text == "three_class") return Task::ThreeClass;
  throw Error(ErrorKind::Configuration, "unknown task '" + std::string(text) + "'");
}

Task task_of(Label label) {
  return label == Label::ChatGpt || label == Label::Human ? Task::Binary : Task::ThreeClass;
}

int class_index(Label label) {
  switch (label) {
    case Label::ChatGpt: return 0;
    case Label::Human: return 1;
    case Label::PureAi: return 0;
    case Label::Mixed: return 1;
    case Label::PureHuman: return 2;
  }
  return -1;
}

Label label_from_index(Task task, int index) {
  if (task == Task::Binary) {
    if (index == 0) return Label::ChatGpt;
    if (index == 1) return Label::Human;
  } else {
    if (index == 0) return Label::PureAi;
    if (index == 1) return Label::Mixed;
    if (index == 2) return Label::PureHuman;
  }
  throw Error(ErrorKind::UnknownLabel, "class index " + std::to_string(index));
}

int class_count(Task task) { return task == Task::Binary ? 2 : 3; }

std::vector<std::string> class_names(Task task) {
  std::vector<std::string> names;
  for (int c = 0; c < class_count(task); ++c) names.emplace_back(to_string(label_from_index(task, c)));
  return names;
}

double default_ai_ratio(Label label) {
  switch (label) {
    case Label::ChatGpt:
    case Label::PureAi: return 1.0;
    case Label::Mixed: return 0.5;
    default: return 0.0;
  }
}

namespace {

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

Corpus::Corpus(std::vector<Document> documents) : documents_(std::move(documents)) {
  std::unordered_set<std::string> ids;
  for (std::size_t i = 0; i < documents_.size(); ++i) {
    const auto& d = documents_[i];
    if (!ids.insert(d.id).second) throw Error(ErrorKind::ParseError, "duplicate document id '" + d.id + "'");
    if (blank(d.text)) throw Error(ErrorKind::EmptyInput, "document '" + d.id + "' has empty text");
    if (i == 0) task_ = task_of(d.label);
    if (task_of(d.label) != task_) {
      throw Error(ErrorKind::Configuration, "document '" + d.id + "' mixes binary and three-class labels");
    }
    const bool strictly_mixed = d.ai_token_ratio > 0.0 && d.ai_token_ratio < 1.0;
    if (!(d.ai_token_ratio >= 0.0 && d.ai_token_ratio <= 1.0) || strictly_mixed != (d.label == Label::Mixed)) {
      throw Error(ErrorKind::ParseError, "document '" + d.id + "' has ai_token_ratio inconsistent with its label");
    }
    ++class_counts_[d.label];
  }
}

std::size_t Corpus::count(Label label) const {
  const auto it = class_counts_.find(label);
  return it == class_counts_.end() ? 0 : it->second;
}

std::vector<int> Corpus::class_indices() const {
  std::vector<int> y;
  y.reserve(documents_.size());
  for (const auto& d : documents_) y.push_back(class_index(d.label));
  return y;
}

CorpusFormat format_from_path(const std::filesystem::path& path) {
  return path.extension() == ".csv" ? CorpusFormat::Csv : CorpusFormat::Jsonl;
}

namespace {

struct RawRecord {
  std::size_t line = 0;
  std::string id, title, text, label, source;
  std::optional<double> ratio;
};

Document to_document(const RawRecord& r) {
  Document d;
  d.id = r.id;
  d.title = r.title;
  d.text = r.text;
  d.label = parse_label(r.label);
  try {
    d.source = parse_source(r.source);
  } catch (const Error&) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(r.line) + ": unknown source '" + r.source + "'");
  }
  if (r.ratio) {
    d.ai_token_ratio = *r.ratio;
  } else if (d.label == Label::Mixed) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(r.line) + ": mixed record without ai_token_ratio");
  } else {
    d.ai_token_ratio = default_ai_ratio(d.label);
  }
  return d;
}

std::vector<RawRecord> parse_jsonl(std::string_view content) {
  std::vector<RawRecord> records;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    const auto eol = content.find('\n', pos);
    std::string_view line = content.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? content.size() + 1 : eol + 1;
    if (blank(line)) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": " + e.what());
    }
    RawRecord r;
    r.line = line_no;
    try {
      r.id = j.at("id").get<std::string>();
      r.title = j.at("title").get<std::string>();
      r.text = j.at("text").get<std::string>();
      r.label = j.at("label").get<std::string>();
      r.source = j.value("source", std::string("file"));
      if (j.contains("ai_token_ratio") && !j["ai_token_ratio"].is_null()) r.ratio = j["ai_token_ratio"].get<double>();
    } catch (const json::exception& e) {
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": " + e.what());
    }
    records.push_back(std::move(r));
  }
  return records;
}

// RFC 4180: quoted fields may hold commas, doubled quotes and newlines.
std::vector<std::pair<std::size_t, std::vector<std::string>>> parse_csv_rows(std::string_view content) {
  std::vector<std::pair<std::size_t, std::vector<std::string>>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t line = 1;
  std::size_t row_line = 1;
  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    if (!(row.size() == 1 && row[0].empty())) rows.emplace_back(row_line, std::move(row));
    row.clear();
    row_line = line;
  };
  for (std::size_t i = 0; i < content.size(); ++i) {
    const char c = content[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < content.size() && content[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && !field_started) {
      quoted = true;
      field_started = true;
    } else if (c == ',') {
      end_field();
    } else if (c == '\n') {
      ++line;
      end_row();
    } else if (c == '\r') {
      // tolerated before '\n'
    } else {
      field.push_back(c);
      field_started = true;
    }
  }
  if (quoted) throw Error(ErrorKind::ParseError, "line " + std::to_string(row_line) + ": unterminated quoted field");
  if (field_started || !row.empty()) end_row();
  return rows;
}

std::vector<RawRecord> parse_csv(std::string_view content) {
  auto rows = parse_csv_rows(content);
  std::vector<RawRecord> records;
  if (rows.empty()) return records;
  const auto& header = rows.front().second;
  auto column = [&](std::string_view name, bool required) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    if (required) throw Error(ErrorKind::ParseError, "line 1: missing column '" + std::string(name) + "'");
    return std::nullopt;
  };
  const auto id = *column("id", true), title = *column("title", true), text = *column("text", true),
             label = *column("label", true);
  const auto source = column("source", false), ratio = column("ai_token_ratio", false);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& [line, fields] = rows[r];
    if (fields.size() != header.size()) {
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": expected " +
                                             std::to_string(header.size()) + " fields, got " +
                                             std::to_string(fields.size()));
    }
    RawRecord rec;
    rec.line = line;
    rec.id = fields[id];
    rec.title = fields[title];
    rec.text = fields[text];
    rec.label = fields[label];
    rec.source = source ? fields[*source] : "file";
    if (ratio && !fields[*ratio].empty()) {
      try {
        rec.ratio = std::stod(fields[*ratio]);
      } catch (const std::exception&) {
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": bad ai_token_ratio");
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string format_ratio(double r) {
  std::ostringstream os;
  os.precision(17);
  os << r;
  return os.str();
}

}  // namespace

LoadResult parse_corpus(std::string_view content, CorpusFormat format, const LoadOptions& options) {
  const auto records = format == CorpusFormat::Jsonl ? parse_jsonl(content) : parse_csv(content);
  if (records.empty() && !options.allow_empty) throw Error(ErrorKind::ParseError, "no records");
  LoadResult result;
  std::vector<Document> docs;
  for (const auto& r : records) {
    if (blank(r.text)) {
      ++result.dropped_empty;
      continue;
    }
    docs.push_back(to_document(r));
  }
  if (docs.empty() && !options.allow_empty) {
    throw Error(ErrorKind::EmptyCorpus, "every record has empty text");
  }
  result.corpus = Corpus(std::move(docs));
  return result;
}

LoadResult load_corpus(const std::filesystem::path& path, CorpusFormat format, const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::FileNotFound, path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_corpus(buffer.str(), format, options);
}

std::string serialize_corpus(const Corpus& corpus, CorpusFormat format) {
  std::string out;
  if (format == CorpusFormat::Jsonl) {
    for (const auto& d : corpus.documents()) {
      json j = {{"id", d.id},
                {"title", d.title},
                {"text", d.text},
                {"label", to_string(d.label)},
                {"source", to_string(d.source)},
                {"ai_token_ratio", d.ai_token_ratio}};
      out += j.dump();
      out.push_back('\n');
    }
    return out;
  }
  out = "id,title,text,label,source,ai_token_ratio\n";
  for (const auto& d : corpus.documents()) {
    out += csv_escape(d.id) + "," + csv_escape(d.title) + "," + csv_escape(d.text) + "," +
           std::string(to_string(d.label)) + "," + std::string(to_string(d.source)) + "," +
           format_ratio(d.ai_token_ratio) + "\n";
  }
  return out;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path, CorpusFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << serialize_corpus(corpus, format);
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

std::map<Label, std::size_t> stratified_train_counts(const std::map<Label, std::size_t>& class_counts,
                                                     double train_fraction) {
  constexpr double kSlack = 1e-9;
  std::map<Label, std::size_t> counts;
  std::size_t total = 0;
  std::size_t assigned = 0;
  std::vector<std::pair<double, Label>> fractional;
  for (const auto& [label, n] : class_counts) {
    const double exact = train_fraction * static_cast<double>(n);
    const auto floor_count = static_cast<std::size_t>(std::floor(exact + kSlack));
    counts[label] = std::min(floor_count, n);
    assigned += counts[label];
    total += n;
    fractional.emplace_back(exact - static_cast<double>(floor_count), label);
  }
  const auto target = static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(total) + 0.5 + kSlack));
  std::stable_sort(fractional.begin(), fractional.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return class_index(a.second) < class_index(b.second);
  });
  for (const auto& [frac, label] : fractional) {
    if (assigned >= target) break;
    if (counts[label] < class_counts.at(label)) {
      ++counts[label];
      ++assigned;
    }
  }
  return counts;
}

SplitResult stratified_split(const Corpus& corpus, double train_fraction, std::uint64_t seed) {
  if (corpus.empty()) throw Error(ErrorKind::EmptyCorpus, "cannot split an empty corpus");
  if (!(train_fraction > 0.0 && train_fraction <= 1.0)) {
    throw Error(ErrorKind::Configuration, "train fraction must lie in (0, 1]");
  }
  const Task task = corpus.task();
  for (int c = 0; c < class_count(task); ++c) {
    const Label label = label_from_index(task, c);
    if (corpus.count(label) == 0) {
      throw Error(ErrorKind::StratificationError, "class '" + std::string(to_string(label)) + "' has no documents");
    }
  }

  const auto train_counts = stratified_train_counts(corpus.class_counts(), train_fraction);
  std::vector<bool> in_train(corpus.size(), false);
  for (const auto& [label, n_train] : train_counts) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (corpus[i].label == label) members.push_back(i);
    }
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(class_index(label))));
    rng.shuffle(std::span<std::size_t>(members));
    for (std::size_t k = 0; k < n_train; ++k) in_train[members[k]] = true;
  }

  std::vector<Document> train, test;
  for (std::size_t i = 0; i < corpus.size(); ++i) (in_train[i] ? train : test).push_back(corpus[i]);
  return SplitResult{Corpus(std::move(train)), Corpus(std::move(test)), seed, train_fraction};
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> sentences;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '.' || text[i] == '!' || text[i] == '?') {
      ++i;
      while (i < text.size() && (text[i] == '.' || text[i] == '!' || text[i] == '?')) ++i;
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
      sentences.emplace_back(text.substr(start, i - start));
      start = i;
    } else {
      ++i;
    }
  }
  if (start < text.size()) sentences.emplace_back(text.substr(start));
  return sentences;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

Label label_for_ratio(double ratio) {
  if (ratio <= 0.0) return Label::PureHuman;
  if (ratio >= 1.0) return Label::PureAi;
  return Label::Mixed;
}

}  // namespace

MixResult synthesize_mixed(const Document& human_doc, const Document& ai_doc, double target_ratio,
                           std::uint64_t seed, const PrepConfig& config) {
  if (!(target_ratio >= 0.0 && target_ratio <= 1.0)) {
    throw Error(ErrorKind::Configuration, "target ratio must lie in [0, 1]");
  }
  const auto human_sentences = split_sentences(human_doc.text);
  const auto ai_sentences = split_sentences(ai_doc.text);
  auto token_counts = [&](const std::vector<std::string>& sentences) {
    std::vector<std::size_t> counts;
    for (const auto& s : sentences) counts.push_back(preprocess(s, config).size());
    return counts;
  };
  const auto h = token_counts(human_sentences);
  const auto a = token_counts(ai_sentences);
  const std::size_t total_h = std::accumulate(h.begin(), h.end(), std::size_t{0});
  const std::size_t total_a = std::accumulate(a.begin(), a.end(), std::size_t{0});
  if (total_h == 0 || total_a == 0) {
    throw Error(ErrorKind::EmptyInput, "both source documents need at least one token");
  }

  const std::size_t slots = std::max(h.size(), a.size());
  const std::size_t width = total_h + 1;
  const std::size_t plane = (total_a + 1) * width;
  if (plane * (slots + 1) > 200'000'000) throw Error(ErrorKind::Configuration, "documents too long to mix");
  auto slot_tokens = [](const std::vector<std::size_t>& v, std::size_t i) { return i < v.size() ? v[i] : 0; };

  // reach[i][A * width + H]: after i slots, A AI tokens and H human tokens.
  std::vector<std::vector<std::uint8_t>> reach(slots + 1, std::vector<std::uint8_t>(plane, 0));
  reach[0][0] = 1;
  for (std::size_t i = 0; i < slots; ++i) {
    const std::size_t ai = slot_tokens(a, i), hu = slot_tokens(h, i);
    for (std::size_t A = 0; A <= total_a; ++A) {
      for (std::size_t H = 0; H <= total_h; ++H) {
        if (!reach[i][A * width + H]) continue;
        reach[i + 1][(A + ai) * width + H] = 1;
        reach[i + 1][A * width + H + hu] = 1;
      }
    }
  }

  struct Pair {
    std::size_t ai, human;
  };
  std::vector<Pair> candidates;
  bool any_mixed = false;
  for (std::size_t A = 0; A <= total_a; ++A) {
    for (std::size_t H = 0; H <= total_h; ++H) {
      if (A + H == 0 || !reach[slots][A * width + H]) continue;
      candidates.push_back({A, H});
      any_mixed = any_mixed || (A > 0 && H > 0);
    }
  }
  const bool want_mixed = target_ratio > 0.0 && target_ratio < 1.0;
  const bool restrict_mixed = want_mixed && any_mixed;

  // Nearest share; ties go to the lower share, then to the longer output.
  auto ratio_of = [](const Pair& p) { return static_cast<double>(p.ai) / static_cast<double>(p.ai + p.human); };
  auto lower_share = [](const Pair& x, const Pair& y) {  // x.ai/(x.ai+x.h) < y.ai/(y.ai+y.h), exact
    return x.ai * (y.ai + y.human) < y.ai * (x.ai + x.human);
  };
  std::optional<Pair> best;
  for (const auto& p : candidates) {
    if (restrict_mixed && (p.ai == 0 || p.human == 0)) continue;
    if (!best) {
      best = p;
      continue;
    }
    const double dp = std::abs(ratio_of(p) - target_ratio);
    const double db = std::abs(ratio_of(*best) - target_ratio);
    const bool same_share = !lower_share(p, *best) && !lower_share(*best, p);
    if (dp < db || (dp == db && !same_share && lower_share(p, *best)) ||
        (same_share && p.ai + p.human > best->ai + best->human)) {
      best = p;
    }
  }

  MixResult result;
  result.granularity_warning = want_mixed && !any_mixed;
  result.ai_tokens = best->ai;
  result.total_tokens = best->ai + best->human;

  Document& out = result.document;
  out.id = "mixed:" + human_doc.id + "+" + ai_doc.id;
  out.title = human_doc.title;
  out.source = Source::Synthesized;
  out.ai_token_ratio = best->human == 0 ? 1.0 : (best->ai == 0 ? 0.0 : ratio_of(*best));
  out.label = label_for_ratio(out.ai_token_ratio);

  if (best->ai == 0 && best->human == total_h) {
    out.text = human_doc.text;
    return result;
  }
  if (best->human == 0 && best->ai == total_a) {
    out.text = ai_doc.text;
    return result;
  }

  std::vector<bool> take_ai(slots, false);
  Rng rng(seed);
  std::size_t A = best->ai, H = best->human;
  for (std::size_t i = slots; i-- > 0;) {
    const std::size_t ai = slot_tokens(a, i), hu = slot_tokens(h, i);
    const bool via_ai = A >= ai && reach[i][(A - ai) * width + H];
    const bool via_human = H >= hu && reach[i][A * width + H - hu];
    take_ai[i] = via_ai && (!via_human || rng.bernoulli(0.5));
    if (take_ai[i]) {
      A -= ai;
    } else {
      H -= hu;
    }
  }
  std::string text;
  for (std::size_t i = 0; i < slots; ++i) {
    const auto& pool = take_ai[i] ? ai_sentences : human_sentences;
    if (i >= pool.size()) continue;
    const std::string piece = trim(pool[i]);
    if (piece.empty()) continue;
    if (!text.empty()) text.push_back(' ');
    text += piece;
  }
  out.text = std::move(text);
  return result;
}

Corpus build_three_class_set(const Corpus& human_pool, const Corpus& ai_pool, const ThreeClassOptions& options) {
  const std::size_t n = options.n_per_class;
  if (!(options.ratio_low > 0.0 && options.ratio_low <= options.ratio_high && options.ratio_high < 1.0)) {
    throw Error(ErrorKind::Configuration, "ratio range must satisfy 0 < low <= high < 1");
  }
  if (n == 0) return Corpus{};
  for (const auto& d : human_pool.documents()) {
    if (d.label != Label::Human && d.label != Label::PureHuman) {
      throw Error(ErrorKind::Configuration, "human pool contains non-human document '" + d.id + "'");
    }
  }
  for (const auto& d : ai_pool.documents()) {
    if (d.label != Label::ChatGpt && d.label != Label::PureAi) {
      throw Error(ErrorKind::Configuration, "AI pool contains non-AI document '" + d.id + "'");
    }
  }
  if (human_pool.size() <= n || ai_pool.size() <= n) {
    throw Error(ErrorKind::InsufficientPool, "each pool needs more than n_per_class documents");
  }

  std::vector<std::size_t> human_order(human_pool.size()), ai_order(ai_pool.size());
  std::iota(human_order.begin(), human_order.end(), 0);
  std::iota(ai_order.begin(), ai_order.end(), 0);
  Rng(derive_seed(options.seed, 1)).shuffle(std::span<std::size_t>(human_order));
  Rng(derive_seed(options.seed, 2)).shuffle(std::span<std::size_t>(ai_order));
  Rng ratio_rng(derive_seed(options.seed, 3));

  std::vector<Document> docs;
  docs.reserve(3 * n);
  for (std::size_t k = 0; k < n; ++k) {
    Document d = ai_pool[ai_order[k]];
    d.id = "pure_ai:" + d.id;
    d.label = Label::PureAi;
    d.ai_token_ratio = 1.0;
    docs.push_back(std::move(d));
  }

  std::size_t next = n;
  std::size_t mixed = 0;
  while (mixed < n) {
    const double target = ratio_rng.uniform(options.ratio_low, options.ratio_high);
    bool placed = false;
    while (!placed) {
      if (next >= human_order.size() || next >= ai_order.size()) {
        throw Error(ErrorKind::InsufficientPool, "ran out of source pairs for mixed documents");
      }
      const Document& hd = human_pool[human_order[next]];
      const Document& ad = ai_pool[ai_order[next]];
      ++next;
      auto mix = synthesize_mixed(hd, ad, target, derive_seed(options.seed, 1000 + mixed), options.prep);
      if (mix.document.label != Label::Mixed) continue;
      docs.push_back(std::move(mix.document));
      placed = true;
    }
    ++mixed;
  }

  for (std::size_t k = 0; k < n; ++k) {
    Document d = human_pool[human_order[k]];
    d.id = "pure_human:" + d.id;
    d.label = Label::PureHuman;
    d.ai_token_ratio = 0.0;
    docs.push_back(std::move(d));
  }
  return Corpus(std::move(docs));
}

Corpus concatenate_by_title(const Corpus& corpus) {
  std::vector<Document> out;
  std::map<std::pair<Label, std::string>, std::size_t> slot;
  std::vector<std::size_t> members;
  for (const auto& d : corpus.documents()) {
    const auto key = std::make_pair(d.label, d.title);
    const auto it = slot.find(key);
    if (it == slot.end()) {
      slot.emplace(key, out.size());
      Document a = d;
      a.id = "article:" + std::string(to_string(d.label)) + ":" + d.title;
      out.push_back(std::move(a));
      members.push_back(1);
    } else {
      Document& a = out[it->second];
      a.text += "\n\n" + d.text;
      const auto m = static_cast<double>(++members[it->second]);
      a.ai_token_ratio += (d.ai_token_ratio - a.ai_token_ratio) / m;
    }
  }
  return Corpus(std::move(out));
}

}  // namespace aitd
