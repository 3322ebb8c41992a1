#pragma once

// Three-class detectors behind one interface: an external HTTP API adapter,
// the locally trained model, and a fixed verdict table.

#include <chrono>
#include <map>
#include <mutex>
#include <string>
#include <string_view>

#include <json.hpp>

#include "aitd/corpus.hpp"
#include "aitd/eval.hpp"
#include "aitd/features.hpp"
#include "aitd/models/classifier.hpp"
#include "aitd/transport.hpp"

namespace aitd {

enum class Verdict { PureAi, Mixed, PureHuman, Unrecognized };

std::string_view to_string(Verdict v);
Verdict parse_verdict(std::string_view text);
/// Three-class index, or kUnrecognized.
int verdict_index(Verdict v);
Verdict verdict_from_index(int index);

struct DetectorVerdict {
  Verdict verdict = Verdict::Unrecognized;
  /// Raw response body or failure description, for audit.
  std::string payload;
  std::string error;
  std::size_t attempts = 0;
  double latency_ms = 0.0;
};

class Detector {
 public:
  virtual ~Detector() = default;
  virtual std::string name() const = 0;
  virtual DetectorVerdict classify(const Document& document) = 0;
};

struct ExternalDetectorOptions {
  std::string endpoint = "https://api.gptzero.me/v2/predict/text";
  std::string api_key_env = "DETECTOR_API_KEY";
  /// JSON pointer to the document-level AI probability.
  std::string probability_pointer = "/documents/0/completely_generated_prob";
  double ai_high = 0.9;
  double human_low = 0.1;
  /// Texts shorter than this many characters are not sent.
  std::size_t min_chars = 250;
  std::size_t max_attempts = 3;
  /// 0 disables the limiter.
  double requests_per_second = 1.0;
};

void to_json(nlohmann::json& j, const ExternalDetectorOptions& o);
void from_json(const nlohmann::json& j, ExternalDetectorOptions& o);

/// Minimum spacing between live requests.
class RateLimiter {
 public:
  explicit RateLimiter(double requests_per_second);
  void acquire();

 private:
  std::chrono::steady_clock::duration interval_{};
  std::chrono::steady_clock::time_point next_{};
  std::mutex mutex_;
};

/// Code points in a UTF-8 string.
std::size_t char_count(std::string_view text);

/// POST {"document": text}; the API key header is added when the variable is set.
HttpRequest detector_request(std::string_view text, const ExternalDetectorOptions& options,
                             const std::string& api_key = "");

/// p >= ai_high -> PureAi, p <= human_low -> PureHuman, otherwise Mixed.
Verdict verdict_for_probability(double p, const ExternalDetectorOptions& options);

/// Never throws for transport or payload problems: they fold into
/// Unrecognized with the failure kept in the audit fields.
DetectorVerdict external_classify(HttpTransport& transport, std::string_view text,
                                  const ExternalDetectorOptions& options, RateLimiter* limiter = nullptr);

class ExternalDetector final : public Detector {
 public:
  ExternalDetector(HttpTransport& transport, ExternalDetectorOptions options, std::string name = "external");
  std::string name() const override { return name_; }
  DetectorVerdict classify(const Document& document) override;

 private:
  HttpTransport& transport_;
  ExternalDetectorOptions options_;
  RateLimiter limiter_;
  std::string name_;
};

/// Wraps a three-class classifier (class index order PureAi, Mixed, PureHuman).
class LocalDetector final : public Detector {
 public:
  LocalDetector(const Classifier& model, const TfidfModel& tfidf, PrepConfig prep, std::string name = "local");
  std::string name() const override { return name_; }
  DetectorVerdict classify(const Document& document) override;

 private:
  const Classifier& model_;
  const TfidfModel& tfidf_;
  PrepConfig prep_;
  std::string name_;
};

/// Verdicts looked up by document id; an unknown id is a ParseError.
class FixedDetector final : public Detector {
 public:
  FixedDetector(std::map<std::string, Verdict> verdicts, std::string name);
  /// {"name": ..., "verdicts": {"<doc id>": "Mixed", ...}}
  static FixedDetector from_json(const nlohmann::json& j);
  std::string name() const override { return name_; }
  DetectorVerdict classify(const Document& document) override;

 private:
  std::map<std::string, Verdict> verdicts_;
  std::string name_;
};

}  // namespace aitd
