#include "aitd/wikipedia.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "aitd/error.hpp"
#include "aitd/parallel.hpp"

namespace aitd {

using nlohmann::json;

std::string wiki_search_url(const std::string& base_url, const std::string& keyword, std::size_t limit) {
  return base_url + "/w/api.php?action=query&list=search&format=json&srlimit=" + std::to_string(limit) +
         "&srsearch=" + url_encode(keyword);
}

std::string wiki_extract_url(const std::string& base_url, const std::string& title) {
  return base_url + "/w/api.php?action=query&prop=extracts&explaintext=1&redirects=1&format=json&titles=" +
         url_encode(title);
}

namespace {

std::string collapse_spaces(std::string_view line) {
  std::string out;
  bool space = false;
  for (char c : line) {
    if (c == ' ' || c == '\t' || c == '\r') {
      space = !out.empty();
      continue;
    }
    if (space) out.push_back(' ');
    space = false;
    out.push_back(c);
  }
  return out;
}

std::string remove_between(std::string_view text, std::string_view open, std::string_view close) {
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto start = text.find(open, i);
    if (start == std::string_view::npos) {
      out.append(text.substr(i));
      break;
    }
    out.append(text.substr(i, start - i));
    const auto end = text.find(close, start + open.size());
    if (end == std::string_view::npos) break;
    i = end + close.size();
  }
  return out;
}

std::vector<std::string> paragraphs_of(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    const auto line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    std::string cleaned = collapse_spaces(line);
    if (!cleaned.empty()) out.push_back(std::move(cleaned));
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return out;
}

HttpResponse checked(HttpTransport& client, const std::string& url) {
  HttpResponse response = client.send(HttpRequest{"GET", url, {{"User-Agent", "aitd/0.3"}}, ""});
  if (response.status != 200) {
    throw Error(ErrorKind::NetworkError, url + " returned HTTP " + std::to_string(response.status));
  }
  return response;
}

}  // namespace

std::string strip_wiki_markup(std::string_view text) {
  std::string s = remove_between(text, "<!--", "-->");
  s = remove_between(s, "{{", "}}");
  s = remove_between(s, "<", ">");
  std::string out;
  for (const auto& para : paragraphs_of(s)) {
    if (para.size() >= 2 && para.front() == '=' && para.back() == '=') continue;  // "== Heading =="
    std::string cleaned;
    for (char c : para) {
      if (c != '[' && c != ']') cleaned.push_back(c);
    }
    if (!out.empty()) out += "\n";
    out += cleaned;
  }
  return out;
}

std::vector<Document> fetch_wikipedia(HttpTransport& client, const std::string& keyword,
                                      const WikiFetchOptions& options) {
  if (options.max_docs == 0) throw Error(ErrorKind::Configuration, "max_docs must be at least 1");
  const auto search = checked(client, wiki_search_url(options.base_url, keyword, options.max_docs));
  std::set<std::string> titles;
  try {
    const auto j = json::parse(search.body);
    if (j.contains("query") && j["query"].contains("search")) {
      for (const auto& hit : j["query"]["search"]) titles.insert(hit.at("title").get<std::string>());
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("search response: ") + e.what());
  }
  if (titles.empty()) throw Error(ErrorKind::EmptyResult, "no pages for keyword '" + keyword + "'");

  std::vector<std::string> ordered(titles.begin(), titles.end());
  if (ordered.size() > options.max_docs) ordered.resize(options.max_docs);

  // One slot per title; emission order is the sorted title order regardless of
  // how requests interleave.
  std::vector<std::pair<std::string, std::string>> extracts(ordered.size());
  parallel_for(ordered.size(), options.threads, [&](std::size_t i) {
    const auto response = checked(client, wiki_extract_url(options.base_url, ordered[i]));
    try {
      const auto j = json::parse(response.body);
      for (const auto& [id, page] : j.at("query").at("pages").items()) {
        extracts[i] = {page.value("title", ordered[i]), page.value("extract", std::string())};
        break;
      }
    } catch (const json::exception& e) {
      throw Error(ErrorKind::ParseError, "extract response for '" + ordered[i] + "': " + e.what());
    }
  });

  std::vector<Document> docs;
  std::set<std::string> seen;
  for (const auto& [title, raw] : extracts) {
    if (title.empty() || !seen.insert(title).second) continue;
    const std::string text = strip_wiki_markup(raw);
    if (text.empty()) continue;
    auto make = [&](std::string id, std::string body) {
      Document d;
      d.id = std::move(id);
      d.title = title;
      d.text = std::move(body);
      d.label = Label::Human;
      d.source = Source::WikipediaApi;
      d.ai_token_ratio = 0.0;
      return d;
    };
    if (options.split_paragraphs) {
      std::size_t k = 0;
      for (auto& para : paragraphs_of(text)) docs.push_back(make("wiki:" + title + "#" + std::to_string(k++), para));
    } else {
      docs.push_back(make("wiki:" + title, text));
    }
  }
  if (docs.empty()) throw Error(ErrorKind::EmptyResult, "pages for '" + keyword + "' had no text");
  return docs;
}

}  // namespace aitd
