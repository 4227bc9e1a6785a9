#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "infoops/corpus.hpp"
#include "infoops/decision.hpp"
#include "infoops/finetune_io.hpp"

namespace infoops {

enum class BackendKind { http, oracle_mock, hash_mock, file_replay };

BackendKind backend_kind_from_string(const std::string& s);

struct BackendConfig {
  BackendKind kind = BackendKind::hash_mock;
  std::string endpoint;    // http: chat-completion URL
  std::string model_name;  // http
  std::string auth_token;  // http, optional
  double temperature = 0.0;
  int max_output_tokens = 4;
  std::chrono::milliseconds request_timeout{30000};
  int max_retries = 3;
  int parallelism = 4;
  double epsilon = 0.0;     // oracle_mock flip probability
  std::uint64_t seed = 0;   // oracle_mock / hash_mock
  std::string replay_path;  // file_replay
  double failure_threshold = 0.05;
};

class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BatchAborted : public std::runtime_error {
 public:
  BatchAborted(double rate, double threshold)
      : std::runtime_error("batch aborted: transport failure rate " +
                           std::to_string(rate) + " exceeds threshold " +
                           std::to_string(threshold)),
        failure_rate(rate) {}
  double failure_rate;
};

// Backends must be safely shareable across concurrent callers.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual BinaryDecision classify(const std::string& prompt, const std::string& key) = 0;
};

// `truth` maps key -> ground-truth label; required for oracle_mock.
std::unique_ptr<Backend> make_backend(const BackendConfig& config,
                                      const std::map<std::string, Label>* truth = nullptr);

struct BatchResult {
  PredictionSet predictions;
  double transport_failure_rate = 0.0;
  double parse_failure_rate = 0.0;
};

// Runs all items with at most `parallelism` requests in flight. Transport
// failures are recorded as ParseFailure entries, never dropped; the batch
// aborts only when the transport failure rate exceeds the threshold.
BatchResult classify_batch(Backend& backend,
                           const std::vector<std::pair<std::string, std::string>>& items,
                           Task task, int parallelism = 4, double failure_threshold = 0.05);

}  // namespace infoops
