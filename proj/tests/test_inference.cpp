#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "infoops/inference.hpp"

using namespace infoops;

TEST_CASE("parse_binary recognizes the first standalone keyword") {
  CHECK(parse_binary("True").value == Decision::Positive);
  CHECK(parse_binary("  false.").value == Decision::Negative);
  CHECK(parse_binary("uncertain").value == Decision::ParseFailure);
  CHECK(parse_binary("It is True that...").value == Decision::Positive);
  CHECK(parse_binary("FALSE, not true").value == Decision::Negative);
  CHECK(parse_binary("untrue").value == Decision::ParseFailure);
  CHECK(parse_binary("truthful falsehood").value == Decision::ParseFailure);
  CHECK(parse_binary("").value == Decision::ParseFailure);
  CHECK(parse_binary("Answer: TRUE").value == Decision::Positive);
  CHECK(parse_binary("maybe").raw == "maybe");
}

TEST_CASE("oracle_mock returns truth at epsilon 0 and flips at epsilon 1") {
  std::map<std::string, Label> truth{{"t1", Label::driver}, {"t2", Label::organic}};
  BackendConfig cfg;
  cfg.kind = BackendKind::oracle_mock;
  cfg.epsilon = 0.0;
  auto exact = make_backend(cfg, &truth);
  CHECK(exact->classify("p", "t1").value == Decision::Positive);
  CHECK(exact->classify("p", "t2").value == Decision::Negative);

  cfg.epsilon = 1.0;
  auto flipped = make_backend(cfg, &truth);
  CHECK(flipped->classify("p", "t1").value == Decision::Negative);
  CHECK(flipped->classify("p", "t2").value == Decision::Positive);

  CHECK_THROWS_AS(exact->classify("p", "unknown"), TransportError);
  CHECK_THROWS_AS(make_backend(cfg, nullptr), std::invalid_argument);
}

TEST_CASE("hash_mock is a pure function of seed and key") {
  BackendConfig cfg;
  cfg.kind = BackendKind::hash_mock;
  cfg.seed = 5;
  auto b = make_backend(cfg);
  auto first = b->classify("p", "k1").value;
  CHECK(b->classify("p", "k1").value == first);
  CHECK(b->classify("other prompt", "k1").value == first);

  cfg.seed = 6;
  auto other_seed = make_backend(cfg);
  bool any_diff = false;
  for (int i = 0; i < 64; ++i) {
    std::string key = "k" + std::to_string(i);
    if (b->classify("p", key).value != other_seed->classify("p", key).value) any_diff = true;
  }
  CHECK(any_diff);
}

TEST_CASE("file_replay returns recorded decisions and rejects unknown keys") {
  PredictionSet set;
  set.task = Task::tweet;
  set.entries = {{"a", Decision::Positive, "True"}, {"b", Decision::Negative, "False"}};
  auto path = std::filesystem::temp_directory_path() / "infoops_replay.ndjson";
  write_prediction_set(set, path);

  BackendConfig cfg;
  cfg.kind = BackendKind::file_replay;
  cfg.replay_path = path.string();
  auto b = make_backend(cfg);
  CHECK(b->classify("p", "a").value == Decision::Positive);
  CHECK(b->classify("p", "b").value == Decision::Negative);
  CHECK_THROWS_AS(b->classify("p", "c"), TransportError);
}

TEST_CASE("classify_batch is invariant under permutation and parallelism") {
  BackendConfig cfg;
  cfg.kind = BackendKind::hash_mock;
  cfg.seed = 11;
  auto b = make_backend(cfg);

  std::vector<std::pair<std::string, std::string>> items;
  for (int i = 0; i < 100; ++i) items.push_back({"k" + std::to_string(i), "prompt"});

  auto r1 = classify_batch(*b, items, Task::tweet, 1);
  auto r8 = classify_batch(*b, items, Task::tweet, 8);
  auto reversed = items;
  std::reverse(reversed.begin(), reversed.end());
  auto rr = classify_batch(*b, reversed, Task::tweet, 8);

  REQUIRE(r1.predictions.entries.size() == 100);
  std::map<std::string, Decision> m1, m8, mr;
  for (const auto& e : r1.predictions.entries) m1[e.key] = e.decision;
  for (const auto& e : r8.predictions.entries) m8[e.key] = e.decision;
  for (const auto& e : rr.predictions.entries) mr[e.key] = e.decision;
  CHECK(m1 == m8);
  CHECK(m1 == mr);
  CHECK(r1.transport_failure_rate == 0.0);
  CHECK(r1.parse_failure_rate == 0.0);

  auto dup = items;
  dup.push_back(items.front());
  CHECK_THROWS(classify_batch(*b, dup, Task::tweet, 4));
}

namespace {

// Fails transport on a fixed subset of keys.
class FlakyBackend final : public Backend {
 public:
  explicit FlakyBackend(int fail_below) : fail_below_(fail_below) {}
  BinaryDecision classify(const std::string&, const std::string& key) override {
    int n = std::stoi(key.substr(1));
    if (n < fail_below_) throw TransportError("synthetic outage");
    return {Decision::Positive, "True", 0.0};
  }

 private:
  int fail_below_;
};

}  // namespace

TEST_CASE("classify_batch tolerates failures below the threshold and aborts above") {
  std::vector<std::pair<std::string, std::string>> items;
  for (int i = 0; i < 100; ++i) items.push_back({"k" + std::to_string(i), "p"});

  FlakyBackend one_failure(1);
  auto r = classify_batch(one_failure, items, Task::tweet, 4, 0.05);
  CHECK(r.transport_failure_rate == doctest::Approx(0.01));
  REQUIRE(r.predictions.entries.size() == 100);
  auto failed = std::find_if(r.predictions.entries.begin(), r.predictions.entries.end(),
                             [](const Prediction& p) { return p.key == "k0"; });
  REQUIRE(failed != r.predictions.entries.end());
  CHECK(failed->decision == Decision::ParseFailure);

  FlakyBackend ten_failures(10);
  CHECK_THROWS_AS(classify_batch(ten_failures, items, Task::tweet, 4, 0.05), BatchAborted);
}

TEST_CASE("http backend speaks the chat-completion wire format") {
  httplib::Server server;
  std::atomic<int> requests{0};
  std::string seen_auth, seen_model, seen_prompt;
  server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    ++requests;
    auto it = req.headers.find("Authorization");
    if (it != req.headers.end()) seen_auth = it->second;
    auto body = nlohmann::json::parse(req.body);
    seen_model = body["model"].get<std::string>();
    seen_prompt = body["messages"][0]["content"].get<std::string>();
    nlohmann::json reply = {
        {"choices", {{{"message", {{"role", "assistant"}, {"content", "True"}}}}}}};
    res.set_content(reply.dump(), "application/json");
  });
  int port = server.bind_to_any_port("127.0.0.1");
  std::thread srv([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  BackendConfig cfg;
  cfg.kind = BackendKind::http;
  cfg.endpoint = "http://127.0.0.1:" + std::to_string(port);
  cfg.model_name = "test-model";
  cfg.auth_token = "secret";
  cfg.max_retries = 0;
  auto backend = make_backend(cfg);
  auto d = backend->classify("is this coordinated?", "k1");

  CHECK(d.value == Decision::Positive);
  CHECK(d.raw == "True");
  CHECK(requests == 1);
  CHECK(seen_auth == "Bearer secret");
  CHECK(seen_model == "test-model");
  CHECK(seen_prompt == "is this coordinated?");

  server.stop();
  srv.join();
}

TEST_CASE("http backend retries then reports transport failure") {
  BackendConfig cfg;
  cfg.kind = BackendKind::http;
  cfg.endpoint = "http://127.0.0.1:1";  // nothing listens here
  cfg.model_name = "m";
  cfg.max_retries = 1;
  cfg.request_timeout = std::chrono::milliseconds(1000);
  auto backend = make_backend(cfg);
  CHECK_THROWS_AS(backend->classify("p", "k"), TransportError);
}

TEST_CASE("http backend requires endpoint and model") {
  BackendConfig cfg;
  cfg.kind = BackendKind::http;
  CHECK_THROWS_AS(make_backend(cfg), std::invalid_argument);
}
