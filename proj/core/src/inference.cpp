#include "infoops/inference.hpp"

#include <atomic>
#include <cctype>
#include <set>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "infoops/rng.hpp"
#include "infoops/util.hpp"

namespace infoops {

using json = nlohmann::json;

std::string to_string(Decision d) {
  switch (d) {
    case Decision::Positive: return "Positive";
    case Decision::Negative: return "Negative";
    case Decision::ParseFailure: return "ParseFailure";
  }
  throw std::logic_error("bad Decision");
}

Decision decision_from_string(const std::string& s) {
  if (s == "Positive") return Decision::Positive;
  if (s == "Negative") return Decision::Negative;
  if (s == "ParseFailure") return Decision::ParseFailure;
  throw std::invalid_argument("unknown decision '" + s + "'");
}

BinaryDecision parse_binary(const std::string& completion) {
  std::string word;
  auto check = [&](const std::string& w) -> Decision {
    std::string lc = to_lower(w);
    if (lc == "true") return Decision::Positive;
    if (lc == "false") return Decision::Negative;
    return Decision::ParseFailure;
  };
  for (unsigned char c : completion) {
    if (std::isalpha(c)) {
      word += static_cast<char>(c);
    } else if (!word.empty()) {
      if (Decision d = check(word); d != Decision::ParseFailure)
        return {d, completion, 0.0};
      word.clear();
    }
  }
  if (!word.empty())
    if (Decision d = check(word); d != Decision::ParseFailure) return {d, completion, 0.0};
  return {Decision::ParseFailure, completion, 0.0};
}

BackendKind backend_kind_from_string(const std::string& s) {
  if (s == "http") return BackendKind::http;
  if (s == "oracle_mock") return BackendKind::oracle_mock;
  if (s == "hash_mock") return BackendKind::hash_mock;
  if (s == "file_replay") return BackendKind::file_replay;
  throw std::invalid_argument("unknown backend kind '" + s + "'");
}

namespace {

class OracleMockBackend final : public Backend {
 public:
  OracleMockBackend(std::map<std::string, Label> truth, double epsilon, std::uint64_t seed)
      : truth_(std::move(truth)), epsilon_(epsilon), seed_(seed) {}

  BinaryDecision classify(const std::string&, const std::string& key) override {
    auto it = truth_.find(key);
    if (it == truth_.end()) throw TransportError("oracle_mock: no ground truth for '" + key + "'");
    bool positive = it->second == Label::driver;
    if (keyed_rng(seed_, "oracle\x1f" + key).bernoulli(epsilon_)) positive = !positive;
    return {positive ? Decision::Positive : Decision::Negative,
            positive ? "True" : "False", 0.0};
  }

 private:
  const std::map<std::string, Label> truth_;
  const double epsilon_;
  const std::uint64_t seed_;
};

class HashMockBackend final : public Backend {
 public:
  explicit HashMockBackend(std::uint64_t seed) : seed_(seed) {}

  BinaryDecision classify(const std::string&, const std::string& key) override {
    bool positive = (fnv1a(key, fnv1a_mix(seed_)) & 1) == 0;
    return {positive ? Decision::Positive : Decision::Negative,
            positive ? "True" : "False", 0.0};
  }

 private:
  const std::uint64_t seed_;
};

class FileReplayBackend final : public Backend {
 public:
  explicit FileReplayBackend(const std::string& path) {
    for (const auto& e : read_prediction_set(path).entries) recorded_[e.key] = e;
  }

  BinaryDecision classify(const std::string&, const std::string& key) override {
    auto it = recorded_.find(key);
    if (it == recorded_.end()) throw TransportError("file_replay: no recorded decision for '" + key + "'");
    return {it->second.decision, it->second.raw, 0.0};
  }

 private:
  std::map<std::string, Prediction> recorded_;
};

class HttpBackend final : public Backend {
 public:
  explicit HttpBackend(BackendConfig config) : config_(std::move(config)) {
    if (config_.endpoint.empty() || config_.model_name.empty())
      throw std::invalid_argument("http backend requires endpoint and model_name");
    auto scheme_pos = config_.endpoint.find("://");
    std::size_t host_start = scheme_pos == std::string::npos ? 0 : scheme_pos + 3;
    auto path_pos = config_.endpoint.find('/', host_start);
    if (path_pos == std::string::npos) {
      base_ = config_.endpoint;
      path_ = "/v1/chat/completions";
    } else {
      base_ = config_.endpoint.substr(0, path_pos);
      path_ = config_.endpoint.substr(path_pos);
    }
  }

  BinaryDecision classify(const std::string& prompt, const std::string&) override {
    json body;
    body["model"] = config_.model_name;
    body["messages"] = json::array({{{"role", "user"}, {"content", prompt}}});
    body["temperature"] = config_.temperature;
    body["max_tokens"] = config_.max_output_tokens;
    const std::string payload = body.dump();

    std::string last_error;
    auto start = std::chrono::steady_clock::now();
    for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
      if (attempt > 0)
        std::this_thread::sleep_for(std::chrono::milliseconds(250) * (1 << (attempt - 1)));
      httplib::Client cli(base_);
      cli.set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(
          config_.request_timeout));
      cli.set_read_timeout(std::chrono::duration_cast<std::chrono::seconds>(
          config_.request_timeout));
      httplib::Headers headers;
      if (!config_.auth_token.empty())
        headers.emplace("Authorization", "Bearer " + config_.auth_token);
      auto res = cli.Post(path_, headers, payload, "application/json");
      if (!res) {
        last_error = httplib::to_string(res.error());
        continue;
      }
      if (res->status != 200) {
        last_error = "HTTP " + std::to_string(res->status);
        continue;
      }
      double latency = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
      std::string content;
      json parsed = json::parse(res->body, nullptr, false);
      if (!parsed.is_discarded() && parsed.contains("choices") && !parsed["choices"].empty()) {
        const auto& choice = parsed["choices"][0];
        if (choice.contains("message") && choice["message"].contains("content"))
          content = choice["message"]["content"].get<std::string>();
        else if (choice.contains("text"))
          content = choice["text"].get<std::string>();
      }
      BinaryDecision d = parse_binary(content);
      d.latency_ms = latency;
      return d;
    }
    throw TransportError("request to " + base_ + path_ + " failed after " +
                         std::to_string(config_.max_retries + 1) + " attempts: " + last_error);
  }

 private:
  BackendConfig config_;
  std::string base_;
  std::string path_;
};

}  // namespace

std::unique_ptr<Backend> make_backend(const BackendConfig& config,
                                      const std::map<std::string, Label>* truth) {
  switch (config.kind) {
    case BackendKind::http:
      return std::make_unique<HttpBackend>(config);
    case BackendKind::oracle_mock:
      if (!truth) throw std::invalid_argument("oracle_mock requires a ground-truth map");
      return std::make_unique<OracleMockBackend>(*truth, config.epsilon, config.seed);
    case BackendKind::hash_mock:
      return std::make_unique<HashMockBackend>(config.seed);
    case BackendKind::file_replay:
      if (config.replay_path.empty())
        throw std::invalid_argument("file_replay requires replay_path");
      return std::make_unique<FileReplayBackend>(config.replay_path);
  }
  throw std::logic_error("bad BackendKind");
}

BatchResult classify_batch(Backend& backend,
                           const std::vector<std::pair<std::string, std::string>>& items,
                           Task task, int parallelism, double failure_threshold) {
  {
    std::set<std::string> keys;
    for (const auto& [key, prompt] : items)
      if (!keys.insert(key).second)
        throw std::invalid_argument("classify_batch: duplicate key '" + key + "'");
  }

  std::vector<Prediction> entries(items.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> transport_failures{0};

  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= items.size()) break;
      const auto& [key, prompt] = items[i];
      try {
        BinaryDecision d = backend.classify(prompt, key);
        entries[i] = {key, d.value, d.raw};
      } catch (const std::exception& e) {
        transport_failures.fetch_add(1);
        entries[i] = {key, Decision::ParseFailure, std::string("transport error: ") + e.what()};
      }
    }
  };

  int n_threads = std::max(1, std::min<int>(parallelism, static_cast<int>(items.size())));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  BatchResult result;
  result.predictions.task = task;
  result.predictions.entries = std::move(entries);
  const double n = items.empty() ? 1.0 : static_cast<double>(items.size());
  result.transport_failure_rate = static_cast<double>(transport_failures.load()) / n;
  std::size_t parse_failures = 0;
  for (const auto& e : result.predictions.entries)
    if (e.decision == Decision::ParseFailure) ++parse_failures;
  result.parse_failure_rate = static_cast<double>(parse_failures) / n;

  if (result.transport_failure_rate > failure_threshold)
    throw BatchAborted(result.transport_failure_rate, failure_threshold);
  return result;
}

}  // namespace infoops
