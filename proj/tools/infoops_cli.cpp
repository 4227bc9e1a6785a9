// infoops: composable pipeline CLI over persisted intermediate files.
//
// Subcommands: synth, ingest, split, graph, textualize, prompts,
// emit-finetune, classify, score, eval, ablate.
//
// Exit codes: 0 success, 2 missing inputs / invalid config, 3 backend
// failure rate over threshold.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "infoops/corpus.hpp"
#include "infoops/evaluation.hpp"
#include "infoops/finetune_io.hpp"
#include "infoops/graph.hpp"
#include "infoops/inference.hpp"
#include "infoops/pipeline.hpp"
#include "infoops/prompting.hpp"
#include "infoops/rng.hpp"
#include "infoops/scoring.hpp"
#include "infoops/splitter.hpp"
#include "infoops/synth.hpp"
#include "infoops/textualize.hpp"
#include "infoops/util.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace infoops;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitBackend = 3;

std::string file_digest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::uint64_t h = kFnvOffset;
  char buf[65536];
  while (in.read(buf, sizeof(buf)) || in.gcount())
    h = fnv1a(std::string_view(buf, static_cast<std::size_t>(in.gcount())), h);
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

// Parameters and input digests only; no timestamps, so identical runs
// produce byte-identical manifests.
void write_manifest(const fs::path& path, const std::string& command,
                    const std::map<std::string, std::string>& params,
                    const std::vector<fs::path>& inputs) {
  json j;
  j["command"] = command;
  j["params"] = json::object();
  for (const auto& [k, v] : params) j["params"][k] = v;
  j["inputs"] = json::object();
  for (const auto& p : inputs) j["inputs"][p.filename().string()] = file_digest(p);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

CorpusFormat format_from_string(const std::string& s) {
  if (s == "ndjson") return CorpusFormat::ndjson;
  if (s == "csv") return CorpusFormat::csv;
  throw CLI::ValidationError("--format", "must be ndjson or csv");
}

struct SplitBundle {
  SplitDataset split;
  std::set<std::string> validation_ids;
};

SplitBundle load_split_bundle(const Corpus& corpus, const fs::path& split_dir) {
  auto tags = read_split_manifest(split_dir / "split.ndjson");
  SplitBundle bundle;
  bundle.split.campaign = corpus.campaign;

  std::ifstream mf(split_dir / "manifest.json");
  if (mf) {
    json j = json::parse(mf);
    if (j.contains("params")) {
      if (j["params"].contains("midpoint"))
        bundle.split.midpoint = std::stoll(j["params"]["midpoint"].get<std::string>());
      if (j["params"].contains("seed"))
        bundle.split.seed = std::stoull(j["params"]["seed"].get<std::string>());
    }
  } else {
    bundle.split.midpoint = campaign_midpoint(corpus);
  }

  for (const Tweet& t : corpus.tweets) {
    auto it = tags.find(t.tweet_id);
    if (it == tags.end()) continue;
    if (it->second == "test") {
      bundle.split.test.push_back(t);
      bundle.split.test_users.insert(t.author_id);
    } else {
      bundle.split.train.push_back(t);
      bundle.split.train_users.insert(t.author_id);
      if (it->second == "validation") bundle.validation_ids.insert(t.tweet_id);
    }
  }
  return bundle;
}

struct BackendOptions {
  std::string kind = "hash_mock";
  std::string endpoint;
  std::string model;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::string replay;
  int parallelism = 4;
  double failure_threshold = 0.05;
  int max_retries = 3;
  int timeout_ms = 30000;

  void add_flags(CLI::App* cmd) {
    cmd->add_option("--backend", kind, "Backend kind: http, oracle_mock, hash_mock, file_replay")
        ->capture_default_str();
    cmd->add_option("--endpoint", endpoint, "Chat-completion endpoint URL (http backend)");
    cmd->add_option("--model", model, "Model name (http backend)");
    cmd->add_option("--epsilon", epsilon, "Label flip probability (oracle_mock)")
        ->capture_default_str();
    cmd->add_option("--backend-seed", seed, "Mock backend seed")->capture_default_str();
    cmd->add_option("--replay", replay, "Recorded decisions file (file_replay)");
    cmd->add_option("--parallelism", parallelism, "Max requests in flight")
        ->capture_default_str();
    cmd->add_option("--failure-threshold", failure_threshold,
                    "Abort when the transport failure rate exceeds this")
        ->capture_default_str();
    cmd->add_option("--max-retries", max_retries, "Retries per request (http backend)")
        ->capture_default_str();
    cmd->add_option("--timeout-ms", timeout_ms, "Request timeout (http backend)")
        ->capture_default_str();
  }

  BackendConfig to_config() const {
    BackendConfig cfg;
    cfg.kind = backend_kind_from_string(kind);
    cfg.endpoint = endpoint;
    cfg.model_name = model;
    cfg.epsilon = epsilon;
    cfg.seed = seed;
    cfg.replay_path = replay;
    cfg.parallelism = parallelism;
    cfg.failure_threshold = failure_threshold;
    cfg.max_retries = max_retries;
    cfg.request_timeout = std::chrono::milliseconds(timeout_ms);
    if (const char* token = std::getenv("INFOOPS_API_TOKEN")) cfg.auth_token = token;
    return cfg;
  }

  std::map<std::string, std::string> params() const {
    return {{"backend", kind},
            {"epsilon", format_fixed(epsilon, 6)},
            {"backend_seed", std::to_string(seed)},
            {"parallelism", std::to_string(parallelism)},
            {"failure_threshold", format_fixed(failure_threshold, 6)}};
  }
};

MetricRow metrics_from_scores(const std::vector<UserScore>& scores,
                              const std::map<std::string, Label>& predictions,
                              const std::string& method, const std::string& campaign) {
  std::vector<Label> pred, truth;
  std::vector<double> values;
  for (const auto& s : scores) {
    pred.push_back(predictions.at(s.user_id));
    truth.push_back(*s.label);
    values.push_back(s.score);
  }
  Confusion c = confusion_metrics(pred, truth);
  MetricRow row;
  row.method = method;
  row.campaign = campaign;
  row.precision = c.precision;
  row.recall = c.recall;
  row.f1 = c.f1;
  row.auc = roc_auc(values, truth);
  return row;
}

// ---- subcommand implementations -------------------------------------------

struct SynthArgs {
  std::string out;
  SynthParams params;
};

void run_synth(const SynthArgs& a) {
  Corpus corpus = generate_campaign(a.params);
  write_corpus(corpus, a.out, CorpusFormat::ndjson);
  write_manifest(a.out + ".manifest.json", "synth",
                 {{"users", std::to_string(a.params.n_users)},
                  {"driver_fraction", format_fixed(a.params.driver_fraction, 6)},
                  {"seed", std::to_string(a.params.seed)},
                  {"campaign", a.params.campaign}},
                 {a.out});
  std::cout << "wrote " << a.out << " (" << corpus.tweets.size() << " tweets)\n";
}

struct IngestArgs {
  std::string in, out;
  std::string format = "ndjson";
  std::string out_format = "ndjson";
  std::string salt;
};

void run_ingest(const IngestArgs& a) {
  Corpus corpus = ingest_corpus(a.in, format_from_string(a.format));
  if (!a.salt.empty()) corpus = anonymize(corpus, a.salt);
  write_corpus(corpus, a.out, format_from_string(a.out_format));
  write_manifest(a.out + ".manifest.json", "ingest",
                 {{"format", a.format}, {"anonymized", a.salt.empty() ? "false" : "true"}},
                 {fs::path(a.in), a.out});
  std::cout << "ingested " << corpus.tweets.size() << " tweets from " << a.in << '\n';
}

struct SplitArgs {
  std::string corpus, out_dir;
  int cap = 100;
  int subsample_k = 0;
  double val_frac = 0.0;
  std::uint64_t seed = 0;
  std::string midpoint_rule = "interval";
};

void run_split(const SplitArgs& a) {
  Corpus corpus = ingest_corpus(a.corpus, CorpusFormat::ndjson);
  MidpointRule rule = a.midpoint_rule == "median" ? MidpointRule::median_timestamp
                                                  : MidpointRule::interval_center;
  SplitDataset split = temporal_split(corpus, a.cap, a.seed, rule);
  if (a.subsample_k > 0) split = tweet_task_subsample(split, a.subsample_k, a.seed);

  fs::create_directories(a.out_dir);
  std::optional<std::vector<Tweet>> validation;
  if (a.val_frac > 0.0)
    validation = train_val_split(split.train, a.val_frac, a.seed).second;
  write_split_manifest(fs::path(a.out_dir) / "split.ndjson", split,
                       validation ? &*validation : nullptr);
  write_manifest(fs::path(a.out_dir) / "manifest.json", "split",
                 {{"cap", std::to_string(a.cap)},
                  {"subsample_k", std::to_string(a.subsample_k)},
                  {"val_frac", format_fixed(a.val_frac, 6)},
                  {"seed", std::to_string(a.seed)},
                  {"midpoint", std::to_string(split.midpoint)},
                  {"midpoint_rule", a.midpoint_rule}},
                 {fs::path(a.corpus)});
  std::cout << "split: " << split.train.size() << " train / " << split.test.size()
            << " test tweets, " << split.train_users.size() << "/"
            << split.test_users.size() << " users, midpoint " << split.midpoint << '\n';
}

struct GraphArgs {
  std::string corpus, split_dir, out_dir;
  std::string scope = "all";
};

void run_graph(const GraphArgs& a) {
  Corpus corpus = ingest_corpus(a.corpus, CorpusFormat::ndjson);
  RetweetGraph g;
  if (a.scope == "train") {
    auto bundle = load_split_bundle(corpus, a.split_dir);
    g = build_retweet_graph(bundle.split.train);
  } else {
    g = build_retweet_graph(corpus.tweets);
  }
  CentralityTable table = compute_centrality_table(g);

  fs::create_directories(a.out_dir);
  write_edge_list(g, fs::path(a.out_dir) / "edges.txt");
  write_centrality_csv(table, fs::path(a.out_dir) / "centrality.csv");
  std::vector<fs::path> inputs{fs::path(a.corpus)};
  if (a.scope == "train") inputs.push_back(fs::path(a.split_dir) / "split.ndjson");
  write_manifest(fs::path(a.out_dir) / "manifest.json", "graph", {{"scope", a.scope}},
                 inputs);
  std::cout << "graph: " << g.size() << " nodes, " << g.edge_count << " edges\n";
}

struct TextualizeArgs {
  std::string corpus, split_dir, out;
  std::string kind = "multi";
  std::string users = "test";
  std::string scores;  // content scores csv, for kind content/multi
};

std::vector<UserTextInput> build_user_texts(const Corpus& corpus, const SplitBundle& bundle,
                                            const std::set<TextKind>& features,
                                            const std::string& users_sel,
                                            const std::string& scores_csv) {
  const std::set<std::string>* user_set = nullptr;
  std::set<std::string> all_users;
  if (users_sel == "train") {
    user_set = &bundle.split.train_users;
  } else if (users_sel == "test") {
    user_set = &bundle.split.test_users;
  } else {
    for (const Tweet& t : corpus.tweets) all_users.insert(t.author_id);
    user_set = &all_users;
  }

  RetweetGraph g = build_retweet_graph(corpus.tweets);
  CentralityTable table;
  if (features.count(TextKind::centrality)) table = compute_centrality_table(g);

  std::map<std::string, std::vector<Tweet>> tweets_by_user;
  if (features.count(TextKind::metadata))
    for (const Tweet& t : corpus.tweets)
      if (user_set->count(t.author_id)) tweets_by_user[t.author_id].push_back(t);

  std::map<std::string, double> content_scores;
  if (features.count(TextKind::content)) {
    if (scores_csv.empty())
      throw CLI::ValidationError("--scores", "content feature requires a score csv");
    for (const auto& s : read_score_csv(scores_csv)) content_scores[s.user_id] = s.score;
  }

  std::vector<UserTextInput> out;
  for (const std::string& user : *user_set) {
    std::vector<UserTextInput> parts;
    if (features.count(TextKind::interaction)) parts.push_back(interaction_text(user, g));
    if (features.count(TextKind::centrality)) parts.push_back(centrality_text(user, table));
    if (features.count(TextKind::metadata))
      parts.push_back(metadata_text(user, tweets_by_user[user]));
    if (features.count(TextKind::content)) {
      auto it = content_scores.find(user);
      parts.push_back(content_score_text(user, it == content_scores.end() ? 0.0 : it->second));
    }
    out.push_back(parts.size() == 1 && features.size() == 1 ? parts.front()
                                                            : multi_input_text(parts));
  }
  return out;
}

void run_textualize(const TextualizeArgs& a) {
  Corpus corpus = ingest_corpus(a.corpus, CorpusFormat::ndjson);
  SplitBundle bundle = load_split_bundle(corpus, a.split_dir);

  std::set<TextKind> features;
  if (a.kind == "multi")
    features = {TextKind::interaction, TextKind::centrality, TextKind::metadata,
                TextKind::content};
  else
    features = {text_kind_from_string(a.kind)};

  auto texts = build_user_texts(corpus, bundle, features, a.users, a.scores);
  write_text_inputs(a.out, texts);
  write_manifest(a.out + ".manifest.json", "textualize",
                 {{"kind", a.kind}, {"users", a.users}},
                 {fs::path(a.corpus), fs::path(a.split_dir) / "split.ndjson"});
  std::cout << "wrote " << texts.size() << " user texts to " << a.out << '\n';
}

struct PromptsArgs {
  std::string variant = "zs1";
  std::string tweet;
  std::string driver_example, organic_example;
  std::string template_file;
  std::string dump_dir;
  bool organic_first = false;
};

void run_prompts(const PromptsArgs& a) {
  if (!a.dump_dir.empty()) {
    fs::create_directories(a.dump_dir);
    for (PromptId id : {PromptId::zs1, PromptId::zs2, PromptId::zs3, PromptId::zs4,
                        PromptId::few_shot, PromptId::user_instruction}) {
      std::ofstream out(fs::path(a.dump_dir) / (to_string(id) + ".txt"));
      out << default_template(id) << '\n';
    }
    std::cout << "templates written to " << a.dump_dir << '\n';
    return;
  }
  std::optional<std::string> override_tmpl;
  if (!a.template_file.empty()) override_tmpl = load_template(a.template_file);
  const std::string* tmpl = override_tmpl ? &*override_tmpl : nullptr;

  if (a.variant == "user_instruction") {
    std::cout << user_instruction() << '\n';
  } else if (a.variant == "few_shot") {
    std::cout << few_shot_prompt(a.driver_example, a.organic_example, a.tweet,
                                 a.organic_first, tmpl)
              << '\n';
  } else {
    int v = a.variant.size() == 3 && a.variant.rfind("zs", 0) == 0 ? a.variant[2] - '0' : -1;
    std::cout << zero_shot_prompt(v, a.tweet, tmpl) << '\n';
  }
}

struct EmitFinetuneArgs {
  std::string task = "tweet";
  std::string corpus, split_dir, texts;
  std::string partition = "train";
  int variant = 1;
  std::string data_out, index_out;
};

void run_emit_finetune(const EmitFinetuneArgs& a) {
  std::vector<KeyedRecord> records;
  Task task = task_from_string(a.task);
  std::vector<fs::path> inputs;

  if (task == Task::tweet) {
    Corpus corpus = ingest_corpus(a.corpus, CorpusFormat::ndjson);
    SplitBundle bundle = load_split_bundle(corpus, a.split_dir);
    std::vector<Tweet> tweets;
    if (a.partition == "test") {
      tweets = bundle.split.test;
    } else {
      for (const Tweet& t : bundle.split.train) {
        bool in_val = bundle.validation_ids.count(t.tweet_id) > 0;
        if ((a.partition == "validation") == in_val) tweets.push_back(t);
      }
    }
    // Instruction is the prompt question; input is the tweet text.
    std::string tmpl = default_template(a.variant == 2   ? PromptId::zs2
                                        : a.variant == 3 ? PromptId::zs3
                                        : a.variant == 4 ? PromptId::zs4
                                                         : PromptId::zs1);
    const std::string suffix = "\n\nTweet: {tweet}";
    std::string instruction = tmpl.substr(0, tmpl.size() - suffix.size());
    for (const Tweet& t : tweets)
      records.push_back(
          {t.tweet_id,
           {instruction, t.text, t.label == Label::driver ? "True" : "False"}});
    inputs = {fs::path(a.corpus), fs::path(a.split_dir) / "split.ndjson"};
  } else {
    Corpus corpus = ingest_corpus(a.corpus, CorpusFormat::ndjson);
    auto truth = user_truth(corpus.tweets);
    for (const auto& t : read_text_inputs(a.texts)) {
      auto it = truth.find(t.user_id);
      if (it == truth.end())
        throw std::runtime_error("no label for user '" + t.user_id + "'");
      records.push_back(
          {t.user_id,
           {user_instruction(), t.text, it->second == Label::driver ? "True" : "False"}});
    }
    inputs = {fs::path(a.corpus), fs::path(a.texts)};
  }

  emit_instruction_file(records, a.data_out, a.index_out, task);
  write_manifest(a.data_out + ".manifest.json", "emit-finetune",
                 {{"task", a.task}, {"partition", a.partition}}, inputs);
  std::cout << "emitted " << records.size() << " records to " << a.data_out << '\n';
}

struct ClassifyArgs {
  std::string task = "tweet";
  std::string corpus, split_dir, texts;
  std::string partition = "test";
  std::string prompt = "zs1";
  std::uint64_t few_shot_seed = 0;
  std::string out;
  BackendOptions backend;
};

void run_classify(const ClassifyArgs& a) {
  Corpus corpus = ingest_corpus(a.corpus, CorpusFormat::ndjson);
  Task task = task_from_string(a.task);

  std::vector<std::pair<std::string, std::string>> items;
  std::map<std::string, Label> truth;
  std::vector<fs::path> inputs{fs::path(a.corpus)};

  if (task == Task::tweet) {
    SplitBundle bundle = load_split_bundle(corpus, a.split_dir);
    std::vector<Tweet> tweets;
    if (a.partition == "test") {
      tweets = bundle.split.test;
    } else {
      for (const Tweet& t : bundle.split.train) {
        bool in_val = bundle.validation_ids.count(t.tweet_id) > 0;
        if ((a.partition == "validation") == in_val) tweets.push_back(t);
      }
    }
    std::optional<std::pair<std::string, std::string>> few_shot_examples;
    if (a.prompt == "few_shot") {
      // Reproducible example selection: seeded draw of one driver and one
      // organic training tweet.
      std::vector<const Tweet*> drivers, organics;
      for (const Tweet& t : bundle.split.train)
        (t.label == Label::driver ? drivers : organics).push_back(&t);
      if (drivers.empty() || organics.empty())
        throw std::runtime_error("few_shot needs train tweets of both classes");
      Rng rng = keyed_rng(a.few_shot_seed, "few_shot");
      few_shot_examples = {drivers[rng.below(drivers.size())]->text,
                           organics[rng.below(organics.size())]->text};
    }
    for (const Tweet& t : tweets) {
      std::string prompt =
          few_shot_examples
              ? few_shot_prompt(few_shot_examples->first, few_shot_examples->second, t.text)
              : zero_shot_prompt(a.prompt.size() == 3 ? a.prompt[2] - '0' : -1, t.text);
      items.emplace_back(t.tweet_id, prompt);
    }
    truth = tweet_truth(corpus.tweets);
    inputs.push_back(fs::path(a.split_dir) / "split.ndjson");
  } else {
    for (const auto& t : read_text_inputs(a.texts))
      items.emplace_back(t.user_id, user_instruction() + "\n\n" + t.text);
    truth = user_truth(corpus.tweets);
    inputs.push_back(fs::path(a.texts));
  }

  auto backend = make_backend(a.backend.to_config(), &truth);
  BatchResult result = classify_batch(*backend, items, task, a.backend.parallelism,
                                      a.backend.failure_threshold);
  write_prediction_set(result.predictions, a.out);
  auto params = a.backend.params();
  params["task"] = a.task;
  params["partition"] = a.partition;
  params["prompt"] = a.prompt;
  write_manifest(a.out + ".manifest.json", "classify", params, inputs);
  std::cout << "classified " << items.size() << " items, transport failure rate "
            << format_fixed(result.transport_failure_rate, 4) << ", parse failure rate "
            << format_fixed(result.parse_failure_rate, 4) << '\n';
}

struct ScoreArgs {
  std::string corpus, split_dir, out_dir;
  std::string objective = "j";
  int prompt_variant = 1;
  BackendOptions backend;
};

void run_score(const ScoreArgs& a) {
  Corpus corpus = ingest_corpus(a.corpus, CorpusFormat::ndjson);
  SplitBundle bundle = load_split_bundle(corpus, a.split_dir);
  if (bundle.validation_ids.empty())
    throw std::runtime_error(
        "split manifest has no validation partition; re-run split with --val-frac");

  auto truth = tweet_truth(corpus.tweets);
  auto backend = make_backend(a.backend.to_config(), &truth);

  ContentModelOptions opts;
  opts.objective =
      a.objective == "f1" ? ThresholdObjective::f1 : ThresholdObjective::youden_j;
  opts.prompt_variant = a.prompt_variant;
  opts.parallelism = a.backend.parallelism;
  opts.failure_threshold = a.backend.failure_threshold;
  ContentModelResult result =
      run_content_model(bundle.split, bundle.validation_ids, *backend, opts);

  fs::create_directories(a.out_dir);
  write_score_csv(result.validation_scores, nullptr,
                  fs::path(a.out_dir) / "validation_scores.csv");
  write_score_csv(result.test_scores, &result.predictions,
                  fs::path(a.out_dir) / "scores.csv");
  {
    json j;
    j["threshold"] = result.model.threshold;
    j["validation_objective"] = result.model.validation_objective;
    j["candidates_examined"] = result.model.candidates_examined;
    j["objective"] = a.objective;
    std::ofstream out(fs::path(a.out_dir) / "model.json");
    out << j.dump(2) << '\n';
  }
  auto params = a.backend.params();
  params["objective"] = a.objective;
  write_manifest(fs::path(a.out_dir) / "manifest.json", "score", params,
                 {fs::path(a.corpus), fs::path(a.split_dir) / "split.ndjson"});
  std::cout << "content model: threshold " << format_fixed(result.model.threshold, 4)
            << ", test F1 " << format_fixed(result.metrics.f1, 4) << ", AUC "
            << format_fixed(result.metrics.auc, 4) << '\n';
}

struct EvalArgs {
  std::vector<std::string> inputs;  // method:campaign:path
  std::string out_dir;
  std::string formats = "csv,json,svg";
};

void run_eval(const EvalArgs& a) {
  std::vector<MetricRow> rows;
  for (const std::string& entry : a.inputs) {
    auto c1 = entry.find(':');
    auto c2 = entry.find(':', c1 == std::string::npos ? 0 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw CLI::ValidationError("--input", "expected method:campaign:path");
    std::string method = entry.substr(0, c1);
    std::string campaign = entry.substr(c1 + 1, c2 - c1 - 1);
    std::string path = entry.substr(c2 + 1);
    std::map<std::string, Label> predictions;
    auto scores = read_score_csv(path, &predictions);
    rows.push_back(metrics_from_scores(scores, predictions, method, campaign));
  }
  auto aggregates = aggregate_campaigns(rows);

  fs::create_directories(a.out_dir);
  std::set<ReportFormat> formats;
  std::istringstream fmt(a.formats);
  std::string f;
  while (std::getline(fmt, f, ',')) {
    if (f == "csv") formats.insert(ReportFormat::csv);
    else if (f == "json") formats.insert(ReportFormat::json);
    else if (f == "svg") formats.insert(ReportFormat::svg);
    else throw CLI::ValidationError("--formats", "unknown format '" + f + "'");
  }
  emit_report(rows, aggregates, fs::path(a.out_dir) / "report", formats);
  std::cout << "report written to " << a.out_dir << '\n';
}

struct AblateArgs {
  std::string corpus, split_dir, out_dir;
  std::string objective = "j";
  BackendOptions backend;
};

void run_ablate(const AblateArgs& a) {
  Corpus corpus = ingest_corpus(a.corpus, CorpusFormat::ndjson);
  SplitBundle bundle = load_split_bundle(corpus, a.split_dir);
  fs::create_directories(a.out_dir);

  // Content scores for the content feature line come from the content model
  // run with the same backend.
  std::set<std::string> validation_ids = bundle.validation_ids;
  if (validation_ids.empty()) {
    auto validation = train_val_split(bundle.split.train, 0.9, bundle.split.seed).second;
    for (const Tweet& t : validation) validation_ids.insert(t.tweet_id);
  }
  auto t_truth = tweet_truth(corpus.tweets);
  auto tweet_backend = make_backend(a.backend.to_config(), &t_truth);
  ContentModelOptions opts;
  opts.objective = a.objective == "f1" ? ThresholdObjective::f1 : ThresholdObjective::youden_j;
  opts.parallelism = a.backend.parallelism;
  opts.failure_threshold = a.backend.failure_threshold;
  ContentModelResult content =
      run_content_model(bundle.split, validation_ids, *tweet_backend, opts);

  fs::path scores_csv = fs::path(a.out_dir) / "content_scores.csv";
  write_score_csv(content.test_scores, nullptr, scores_csv);

  auto u_truth = user_truth(corpus.tweets);
  auto user_backend = make_backend(a.backend.to_config(), &u_truth);

  std::vector<MetricRow> rows;
  for (const AblationConfig& config : ablation_grid()) {
    auto texts = build_user_texts(corpus, bundle, config.features, "test",
                                  scores_csv.string());
    write_text_inputs(fs::path(a.out_dir) / ("texts_" + config.name + ".ndjson"), texts);

    std::vector<std::pair<std::string, std::string>> items;
    for (const auto& t : texts)
      items.emplace_back(t.user_id, user_instruction() + "\n\n" + t.text);
    BatchResult result = classify_batch(*user_backend, items, Task::user,
                                        a.backend.parallelism, a.backend.failure_threshold);

    std::vector<Label> pred, truth;
    std::vector<double> hard_scores;
    for (const auto& e : result.predictions.entries) {
      pred.push_back(e.decision == Decision::Positive ? Label::driver : Label::organic);
      truth.push_back(u_truth.at(e.key));
      hard_scores.push_back(e.decision == Decision::Positive ? 1.0 : 0.0);
    }
    Confusion c = confusion_metrics(pred, truth);
    MetricRow row;
    row.method = config.name;
    row.campaign = corpus.campaign;
    row.precision = c.precision;
    row.recall = c.recall;
    row.f1 = c.f1;
    row.auc = roc_auc(hard_scores, truth);
    row.parse_failure_rate = result.parse_failure_rate;
    rows.push_back(row);
  }

  emit_report(rows, aggregate_campaigns(rows), fs::path(a.out_dir) / "report",
              {ReportFormat::csv, ReportFormat::json, ReportFormat::svg});
  auto params = a.backend.params();
  params["objective"] = a.objective;
  write_manifest(fs::path(a.out_dir) / "manifest.json", "ablate", params,
                 {fs::path(a.corpus), fs::path(a.split_dir) / "split.ndjson"});
  std::cout << "ablation grid (" << rows.size() << " configs) written to " << a.out_dir
            << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Influence-campaign detection pipeline"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Key-value config file; flags override");

  SynthArgs synth_args;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a seeded synthetic campaign");
  synth_cmd->add_option("--out", synth_args.out, "Output corpus NDJSON")->required();
  synth_cmd->add_option("--users", synth_args.params.n_users)->capture_default_str();
  synth_cmd->add_option("--driver-frac", synth_args.params.driver_fraction)
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth_args.params.seed)->capture_default_str();
  synth_cmd->add_option("--campaign", synth_args.params.campaign)->capture_default_str();
  synth_cmd->add_option("--t0", synth_args.params.time_window.first)->capture_default_str();
  synth_cmd->add_option("--t1", synth_args.params.time_window.second)->capture_default_str();
  synth_cmd->add_option("--min-tweets", synth_args.params.tweets_per_user_range.first)
      ->capture_default_str();
  synth_cmd->add_option("--max-tweets", synth_args.params.tweets_per_user_range.second)
      ->capture_default_str();
  synth_cmd->add_option("--p-retweet", synth_args.params.p_retweet)->capture_default_str();
  synth_cmd->add_option("--late-frac", synth_args.params.late_user_fraction,
                        "Share of users active only in the second half of the window")
      ->capture_default_str();
  synth_cmd->add_option("--p-driver-driver", synth_args.params.p_driver_retweets_driver)
      ->capture_default_str();
  synth_cmd->add_option("--p-organic-driver", synth_args.params.p_organic_retweets_driver)
      ->capture_default_str();

  IngestArgs ingest_args;
  auto* ingest_cmd = app.add_subcommand("ingest", "Ingest and validate a corpus");
  ingest_cmd->add_option("--in", ingest_args.in)->required()->check(CLI::ExistingFile);
  ingest_cmd->add_option("--format", ingest_args.format)->capture_default_str();
  ingest_cmd->add_option("--out", ingest_args.out)->required();
  ingest_cmd->add_option("--out-format", ingest_args.out_format)->capture_default_str();
  ingest_cmd->add_option("--anonymize-salt", ingest_args.salt,
                         "Anonymize author/mention ids with this salt");

  SplitArgs split_args;
  auto* split_cmd = app.add_subcommand("split", "Temporal leakage-safe split");
  split_cmd->add_option("--corpus", split_args.corpus)->required()->check(CLI::ExistingFile);
  split_cmd->add_option("--cap", split_args.cap)->capture_default_str();
  split_cmd->add_option("--subsample-k", split_args.subsample_k,
                        "Per-user tweet-task subsample size (0 = off)")
      ->capture_default_str();
  split_cmd->add_option("--val-frac", split_args.val_frac,
                        "Train fraction for the content-model validation tags (0 = off)")
      ->capture_default_str();
  split_cmd->add_option("--seed", split_args.seed)->capture_default_str();
  split_cmd->add_option("--midpoint-rule", split_args.midpoint_rule,
                        "interval (center of [first,last]) or median (median timestamp)")
      ->capture_default_str();
  split_cmd->add_option("--out-dir", split_args.out_dir)->required();

  GraphArgs graph_args;
  auto* graph_cmd = app.add_subcommand("graph", "Build retweet network and centralities");
  graph_cmd->add_option("--corpus", graph_args.corpus)->required()->check(CLI::ExistingFile);
  graph_cmd->add_option("--split-dir", graph_args.split_dir);
  graph_cmd->add_option("--scope", graph_args.scope, "train or all")->capture_default_str();
  graph_cmd->add_option("--out-dir", graph_args.out_dir)->required();

  TextualizeArgs text_args;
  auto* text_cmd = app.add_subcommand("textualize", "Render user text inputs");
  text_cmd->add_option("--corpus", text_args.corpus)->required()->check(CLI::ExistingFile);
  text_cmd->add_option("--split-dir", text_args.split_dir)->required();
  text_cmd->add_option("--kind", text_args.kind,
                       "interaction, centrality, metadata, content or multi")
      ->capture_default_str();
  text_cmd->add_option("--users", text_args.users, "train, test or all")
      ->capture_default_str();
  text_cmd->add_option("--scores", text_args.scores, "Content score CSV");
  text_cmd->add_option("--out", text_args.out)->required();

  PromptsArgs prompts_args;
  auto* prompts_cmd = app.add_subcommand("prompts", "Render prompt templates");
  prompts_cmd->add_option("--variant", prompts_args.variant,
                          "zs1..zs4, few_shot or user_instruction")
      ->capture_default_str();
  prompts_cmd->add_option("--tweet", prompts_args.tweet);
  prompts_cmd->add_option("--driver-example", prompts_args.driver_example);
  prompts_cmd->add_option("--organic-example", prompts_args.organic_example);
  prompts_cmd->add_flag("--organic-first", prompts_args.organic_first);
  prompts_cmd->add_option("--template", prompts_args.template_file)
      ->check(CLI::ExistingFile);
  prompts_cmd->add_option("--dump-templates", prompts_args.dump_dir,
                          "Write the packaged templates to a directory");

  EmitFinetuneArgs emit_args;
  auto* emit_cmd = app.add_subcommand("emit-finetune", "Emit instruction-tuning files");
  emit_cmd->add_option("--task", emit_args.task, "tweet or user")->capture_default_str();
  emit_cmd->add_option("--corpus", emit_args.corpus)->required()->check(CLI::ExistingFile);
  emit_cmd->add_option("--split-dir", emit_args.split_dir);
  emit_cmd->add_option("--texts", emit_args.texts, "User texts NDJSON (user task)");
  emit_cmd->add_option("--partition", emit_args.partition, "train, validation or test")
      ->capture_default_str();
  emit_cmd->add_option("--variant", emit_args.variant, "Zero-shot instruction variant")
      ->capture_default_str();
  emit_cmd->add_option("--data-out", emit_args.data_out)->required();
  emit_cmd->add_option("--index-out", emit_args.index_out)->required();

  ClassifyArgs classify_args;
  auto* classify_cmd = app.add_subcommand("classify", "Run a classification backend");
  classify_cmd->add_option("--task", classify_args.task, "tweet or user")
      ->capture_default_str();
  classify_cmd->add_option("--corpus", classify_args.corpus)
      ->required()
      ->check(CLI::ExistingFile);
  classify_cmd->add_option("--split-dir", classify_args.split_dir);
  classify_cmd->add_option("--texts", classify_args.texts, "User texts NDJSON (user task)");
  classify_cmd->add_option("--partition", classify_args.partition)->capture_default_str();
  classify_cmd->add_option("--prompt", classify_args.prompt, "zs1..zs4 or few_shot")
      ->capture_default_str();
  classify_cmd->add_option("--few-shot-seed", classify_args.few_shot_seed)
      ->capture_default_str();
  classify_cmd->add_option("--out", classify_args.out)->required();
  classify_args.backend.add_flags(classify_cmd);

  ScoreArgs score_args;
  auto* score_cmd = app.add_subcommand("score", "Content-based user scoring");
  score_cmd->add_option("--corpus", score_args.corpus)->required()->check(CLI::ExistingFile);
  score_cmd->add_option("--split-dir", score_args.split_dir)->required();
  score_cmd->add_option("--objective", score_args.objective, "j or f1")
      ->capture_default_str();
  score_cmd->add_option("--prompt-variant", score_args.prompt_variant)->capture_default_str();
  score_cmd->add_option("--out-dir", score_args.out_dir)->required();
  score_args.backend.add_flags(score_cmd);

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "Aggregate metrics and emit reports");
  eval_cmd->add_option("--input", eval_args.inputs, "method:campaign:score_csv")
      ->required();
  eval_cmd->add_option("--out-dir", eval_args.out_dir)->required();
  eval_cmd->add_option("--formats", eval_args.formats)->capture_default_str();

  AblateArgs ablate_args;
  auto* ablate_cmd = app.add_subcommand("ablate", "Run the 5-config ablation grid");
  ablate_cmd->add_option("--corpus", ablate_args.corpus)
      ->required()
      ->check(CLI::ExistingFile);
  ablate_cmd->add_option("--split-dir", ablate_args.split_dir)->required();
  ablate_cmd->add_option("--objective", ablate_args.objective)->capture_default_str();
  ablate_cmd->add_option("--out-dir", ablate_args.out_dir)->required();
  ablate_args.backend.add_flags(ablate_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (synth_cmd->parsed()) run_synth(synth_args);
    else if (ingest_cmd->parsed()) run_ingest(ingest_args);
    else if (split_cmd->parsed()) run_split(split_args);
    else if (graph_cmd->parsed()) run_graph(graph_args);
    else if (text_cmd->parsed()) run_textualize(text_args);
    else if (prompts_cmd->parsed()) run_prompts(prompts_args);
    else if (emit_cmd->parsed()) run_emit_finetune(emit_args);
    else if (classify_cmd->parsed()) run_classify(classify_args);
    else if (score_cmd->parsed()) run_score(score_args);
    else if (eval_cmd->parsed()) run_eval(eval_args);
    else if (ablate_cmd->parsed()) run_ablate(ablate_args);
  } catch (const BatchAborted& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBackend;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
