#pragma once

#include <string>
#include <vector>

#include "aitd/corpus.hpp"
#include "aitd/transport.hpp"

namespace aitd {

struct WikiFetchOptions {
  std::string base_url = "https://en.wikipedia.org";
  std::size_t max_docs = 50;
  /// One document per paragraph (ids "<title>#k", shared title) instead of
  /// one per page.
  bool split_paragraphs = false;
  unsigned threads = 1;
};

/// Searches the MediaWiki API for `keyword`, fetches plain-text extracts and
/// returns Human documents sorted by title, deduplicated by title.
std::vector<Document> fetch_wikipedia(HttpTransport& client, const std::string& keyword,
                                      const WikiFetchOptions& options = {});

std::string wiki_search_url(const std::string& base_url, const std::string& keyword, std::size_t limit);
std::string wiki_extract_url(const std::string& base_url, const std::string& title);

/// Removes section headings, HTML tags and template/link residue left in
/// extracts, and normalizes whitespace within paragraphs.
std::string strip_wiki_markup(std::string_view text);

}  // namespace aitd
