#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "aitd/transport.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <httplib.h>
#include <json.hpp>
#include <sstream>

#include "aitd/error.hpp"

namespace aitd {

std::string sha256_hex(std::string_view material) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(material.data(), material.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::Io, "sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * length);
  for (unsigned i = 0; i < length; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xF]);
  }
  return hex;
}

std::string request_hash(const HttpRequest& request) {
  return sha256_hex(request.method + "\n" + request.url + "\n" + request.body);
}

std::string url_encode(std::string_view text) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : text) {
    if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' || c == '_' ||
        c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xF]);
    }
  }
  return out;
}

HttpResponse HttplibTransport::send(const HttpRequest& request) {
  // Split "scheme://host[:port]/path?query" into the client base and the path.
  const auto scheme_end = request.url.find("://");
  if (scheme_end == std::string::npos) throw Error(ErrorKind::NetworkError, "bad URL '" + request.url + "'");
  const auto path_start = request.url.find('/', scheme_end + 3);
  const std::string base = request.url.substr(0, path_start);
  const std::string path = path_start == std::string::npos ? "/" : request.url.substr(path_start);

  httplib::Client client(base);
  const auto seconds = static_cast<time_t>(timeout_seconds_);
  client.set_connection_timeout(seconds, 0);
  client.set_read_timeout(seconds, 0);
  client.set_follow_location(true);
  httplib::Headers headers;
  std::string content_type = "application/json";
  for (const auto& [k, v] : request.headers) {
    if (k == "Content-Type") {
      content_type = v;
    } else {
      headers.emplace(k, v);
    }
  }
  httplib::Result result = request.method == "POST" ? client.Post(path, headers, request.body, content_type)
                                                    : client.Get(path, headers);
  if (!result) throw Error(ErrorKind::NetworkError, request.url + ": " + httplib::to_string(result.error()));
  return HttpResponse{result->status, result->body};
}

std::string replay_line(const ReplayEntry& entry) {
  nlohmann::json j = {{"request_hash", entry.request_hash}, {"response_body", entry.response_body}};
  if (entry.status != 200) j["status"] = entry.status;
  return j.dump();
}

std::vector<ReplayEntry> load_replay(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::FileNotFound, path.string());
  std::vector<ReplayEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      entries.push_back({j.at("request_hash").get<std::string>(), j.at("response_body").get<std::string>(),
                         j.value("status", 200)});
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::ParseError, path.string() + " line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return entries;
}

void append_replay(const std::filesystem::path& path, const ReplayEntry& entry) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw Error(ErrorKind::Io, "cannot append to " + path.string());
  out << replay_line(entry) << '\n';
}

ReplayTransport::ReplayTransport(std::vector<ReplayEntry> entries) {
  for (auto& e : entries) entries_[e.request_hash].push_back(std::move(e));
}

HttpResponse ReplayTransport::send(const HttpRequest& request) {
  const std::string key = request_hash(request);
  std::lock_guard lock(mutex_);
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw Error(ErrorKind::NetworkError, "no recorded response for " + request.url);
  std::size_t& cursor = cursor_[key];
  const ReplayEntry& entry = it->second[std::min(cursor, it->second.size() - 1)];
  ++cursor;
  return HttpResponse{entry.status, entry.response_body};
}

HttpResponse RecordingTransport::send(const HttpRequest& request) {
  HttpResponse response = inner_.send(request);
  std::lock_guard lock(mutex_);
  append_replay(path_, ReplayEntry{request_hash(request), response.body, response.status});
  return response;
}

}  // namespace aitd
