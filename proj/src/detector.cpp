#include "aitd/detector.hpp"

#include <cmath>
#include <cstdlib>
#include <thread>

#include "aitd/error.hpp"

namespace aitd {

using nlohmann::json;

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::PureAi: return "PureAi";
    case Verdict::Mixed: return "Mixed";
    case Verdict::PureHuman: return "PureHuman";
    case Verdict::Unrecognized: return "Unrecognized";
  }
  return "Unrecognized";
}

Verdict parse_verdict(std::string_view text) {
  for (Verdict v : {Verdict::PureAi, Verdict::Mixed, Verdict::PureHuman, Verdict::Unrecognized}) {
    if (text == to_string(v)) return v;
  }
  // Label spellings as used in corpus files.
  if (text == "pure_ai") return Verdict::PureAi;
  if (text == "mixed") return Verdict::Mixed;
  if (text == "pure_human") return Verdict::PureHuman;
  if (text == "unrecognized") return Verdict::Unrecognized;
  throw Error(ErrorKind::UnknownLabel, "unknown verdict '" + std::string(text) + "'");
}

int verdict_index(Verdict v) {
  switch (v) {
    case Verdict::PureAi: return 0;
    case Verdict::Mixed: return 1;
    case Verdict::PureHuman: return 2;
    case Verdict::Unrecognized: return kUnrecognized;
  }
  return kUnrecognized;
}

Verdict verdict_from_index(int index) {
  switch (index) {
    case 0: return Verdict::PureAi;
    case 1: return Verdict::Mixed;
    case 2: return Verdict::PureHuman;
    default: return Verdict::Unrecognized;
  }
}

void to_json(json& j, const ExternalDetectorOptions& o) {
  j = json{{"endpoint", o.endpoint},
           {"api_key_env", o.api_key_env},
           {"probability_pointer", o.probability_pointer},
           {"ai_high", o.ai_high},
           {"human_low", o.human_low},
           {"min_chars", o.min_chars},
           {"max_attempts", o.max_attempts},
           {"requests_per_second", o.requests_per_second}};
}

void from_json(const json& j, ExternalDetectorOptions& o) {
  const ExternalDetectorOptions d;
  o.endpoint = j.value("endpoint", d.endpoint);
  o.api_key_env = j.value("api_key_env", d.api_key_env);
  o.probability_pointer = j.value("probability_pointer", d.probability_pointer);
  o.ai_high = j.value("ai_high", d.ai_high);
  o.human_low = j.value("human_low", d.human_low);
  o.min_chars = j.value("min_chars", d.min_chars);
  o.max_attempts = j.value("max_attempts", d.max_attempts);
  o.requests_per_second = j.value("requests_per_second", d.requests_per_second);
  if (!(o.human_low < o.ai_high)) throw Error(ErrorKind::Configuration, "human_low must be below ai_high");
  if (o.max_attempts == 0) throw Error(ErrorKind::Configuration, "max_attempts must be >= 1");
}

RateLimiter::RateLimiter(double requests_per_second) {
  if (requests_per_second > 0.0) {
    interval_ = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
        std::chrono::duration<double>(1.0 / requests_per_second));
  }
}

void RateLimiter::acquire() {
  if (interval_.count() == 0) return;
  std::unique_lock lock(mutex_);
  const auto now = std::chrono::steady_clock::now();
  const auto slot = std::max(now, next_);
  next_ = slot + interval_;
  lock.unlock();
  std::this_thread::sleep_until(slot);
}

std::size_t char_count(std::string_view text) {
  std::size_t n = 0;
  for (unsigned char c : text) n += (c & 0xC0) != 0x80;
  return n;
}

HttpRequest detector_request(std::string_view text, const ExternalDetectorOptions& options,
                             const std::string& api_key) {
  HttpRequest r;
  r.method = "POST";
  r.url = options.endpoint;
  r.headers.emplace_back("Content-Type", "application/json");
  if (!api_key.empty()) r.headers.emplace_back("x-api-key", api_key);
  r.body = json{{"document", text}}.dump();
  return r;
}

Verdict verdict_for_probability(double p, const ExternalDetectorOptions& options) {
  if (p >= options.ai_high) return Verdict::PureAi;
  if (p <= options.human_low) return Verdict::PureHuman;
  return Verdict::Mixed;
}

DetectorVerdict external_classify(HttpTransport& transport, std::string_view text,
                                  const ExternalDetectorOptions& options, RateLimiter* limiter) {
  DetectorVerdict v;
  if (char_count(text) < options.min_chars) {
    v.error = "text shorter than " + std::to_string(options.min_chars) + " characters";
    return v;
  }
  const char* key = std::getenv(options.api_key_env.c_str());
  const HttpRequest request = detector_request(text, options, key ? key : "");
  const auto start = std::chrono::steady_clock::now();
  HttpResponse response;
  bool received = false;
  for (std::size_t attempt = 0; attempt < std::max<std::size_t>(options.max_attempts, 1); ++attempt) {
    ++v.attempts;
    if (limiter && transport.is_live()) limiter->acquire();
    try {
      response = transport.send(request);
    } catch (const Error& e) {
      v.error = e.what();
      continue;
    }
    if (response.status == 200) {
      received = true;
      break;
    }
    v.error = "HTTP " + std::to_string(response.status);
    v.payload = response.body;
    if (response.status != 429 && response.status < 500) break;
  }
  v.latency_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (!received) return v;
  v.payload = response.body;
  v.error.clear();
  try {
    const json body = json::parse(response.body);
    const json& field = body.at(json::json_pointer(options.probability_pointer));
    const double p = field.get<double>();
    if (!std::isfinite(p) || p < 0.0 || p > 1.0) throw Error(ErrorKind::ParseError, "probability out of [0,1]");
    v.verdict = verdict_for_probability(p, options);
  } catch (const std::exception& e) {
    v.verdict = Verdict::Unrecognized;
    v.error = std::string("unparseable response: ") + e.what();
  }
  return v;
}

ExternalDetector::ExternalDetector(HttpTransport& transport, ExternalDetectorOptions options, std::string name)
    : transport_(transport), options_(std::move(options)), limiter_(options_.requests_per_second),
      name_(std::move(name)) {}

DetectorVerdict ExternalDetector::classify(const Document& document) {
  return external_classify(transport_, document.text, options_, &limiter_);
}

LocalDetector::LocalDetector(const Classifier& model, const TfidfModel& tfidf, PrepConfig prep, std::string name)
    : model_(model), tfidf_(tfidf), prep_(std::move(prep)), name_(std::move(name)) {
  if (model_.n_classes() != 3) throw Error(ErrorKind::Configuration, "local detector needs a three-class model");
}

DetectorVerdict LocalDetector::classify(const Document& document) {
  DetectorVerdict v;
  const Prediction p = model_.predict(tfidf_.transform(preprocess(document.text, prep_)));
  v.verdict = verdict_from_index(p.label);
  v.attempts = 1;
  return v;
}

FixedDetector::FixedDetector(std::map<std::string, Verdict> verdicts, std::string name)
    : verdicts_(std::move(verdicts)), name_(std::move(name)) {}

FixedDetector FixedDetector::from_json(const json& j) {
  std::map<std::string, Verdict> verdicts;
  for (const auto& [id, v] : j.at("verdicts").items()) verdicts.emplace(id, parse_verdict(v.get<std::string>()));
  return FixedDetector(std::move(verdicts), j.value("name", std::string("fixed")));
}

DetectorVerdict FixedDetector::classify(const Document& document) {
  const auto it = verdicts_.find(document.id);
  if (it == verdicts_.end()) throw Error(ErrorKind::ParseError, "no fixed verdict for document '" + document.id + "'");
  DetectorVerdict v;
  v.verdict = it->second;
  return v;
}

}  // namespace aitd
