#pragma once

// HTTP behind an interface so every fetch and detector call can run against
// mocks or recorded fixtures.

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace aitd {

struct HttpRequest {
  std::string method = "GET";
  std::string url;
  std::vector<std::pair<std::string, std::string>> headers;
  std::string body;
};

struct HttpResponse {
  int status = 0;
  std::string body;
};

class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  /// Throws Error(NetworkError) when no response could be obtained.
  virtual HttpResponse send(const HttpRequest& request) = 0;
  /// Live transports are subject to rate limiting; replays are not.
  virtual bool is_live() const { return true; }
};

std::string sha256_hex(std::string_view material);

/// Hex SHA-256 over method, URL and body. Headers are excluded so API keys
/// never influence (or leak into) fixtures.
std::string request_hash(const HttpRequest& request);

/// Percent-encodes everything outside the RFC 3986 unreserved set.
std::string url_encode(std::string_view text);

/// Real network client (cpp-httplib, HTTPS via OpenSSL).
class HttplibTransport final : public HttpTransport {
 public:
  explicit HttplibTransport(double timeout_seconds = 30.0) : timeout_seconds_(timeout_seconds) {}
  HttpResponse send(const HttpRequest& request) override;

 private:
  double timeout_seconds_;
};

/// Adapter for tests: every request goes through a callable.
class FunctionTransport final : public HttpTransport {
 public:
  using Handler = std::function<HttpResponse(const HttpRequest&)>;
  explicit FunctionTransport(Handler handler) : handler_(std::move(handler)) {}
  HttpResponse send(const HttpRequest& request) override {
    ++calls_;
    return handler_(request);
  }
  bool is_live() const override { return false; }
  std::size_t calls() const { return calls_; }

 private:
  Handler handler_;
  std::size_t calls_ = 0;
};

struct ReplayEntry {
  std::string request_hash;
  std::string response_body;
  int status = 200;
};

std::vector<ReplayEntry> load_replay(const std::filesystem::path& path);
void append_replay(const std::filesystem::path& path, const ReplayEntry& entry);
std::string replay_line(const ReplayEntry& entry);

/// Serves recorded responses keyed by request hash; an unknown request is a
/// NetworkError. Repeated requests replay entries in recorded order.
class ReplayTransport final : public HttpTransport {
 public:
  explicit ReplayTransport(std::vector<ReplayEntry> entries);
  static ReplayTransport from_file(const std::filesystem::path& path) { return ReplayTransport(load_replay(path)); }
  HttpResponse send(const HttpRequest& request) override;
  bool is_live() const override { return false; }

 private:
  std::map<std::string, std::vector<ReplayEntry>> entries_;
  std::map<std::string, std::size_t> cursor_;
  std::mutex mutex_;
};

/// Forwards to an inner transport and persists every exchange for replay.
class RecordingTransport final : public HttpTransport {
 public:
  RecordingTransport(HttpTransport& inner, std::filesystem::path path) : inner_(inner), path_(std::move(path)) {}
  HttpResponse send(const HttpRequest& request) override;
  bool is_live() const override { return inner_.is_live(); }

 private:
  HttpTransport& inner_;
  std::filesystem::path path_;
  std::mutex mutex_;
};

}  // namespace aitd
