#include "infoops/splitter.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

#include "infoops/rng.hpp"

namespace infoops {

using json = nlohmann::ordered_json;

std::int64_t campaign_midpoint(const Corpus& corpus, MidpointRule rule) {
  if (corpus.tweets.empty()) throw std::invalid_argument("campaign_midpoint: empty corpus");
  if (rule == MidpointRule::interval_center) {
    std::int64_t lo = corpus.tweets.front().timestamp;
    std::int64_t hi = lo;
    for (const Tweet& t : corpus.tweets) {
      lo = std::min(lo, t.timestamp);
      hi = std::max(hi, t.timestamp);
    }
    return lo + (hi - lo) / 2;
  }
  std::vector<std::int64_t> ts;
  ts.reserve(corpus.tweets.size());
  for (const Tweet& t : corpus.tweets) ts.push_back(t.timestamp);
  std::sort(ts.begin(), ts.end());
  return ts[(ts.size() - 1) / 2];
}

namespace {

// Uniformly keeps at most `cap` of the given tweets, seeded per user so the
// choice is independent of processing order. Original relative order kept.
std::vector<Tweet> cap_tweets(const std::vector<Tweet>& tweets, std::size_t cap,
                              std::uint64_t seed, const std::string& user,
                              const char* stage) {
  if (tweets.size() <= cap) return tweets;
  Rng rng = keyed_rng(seed, user + "\x1f" + stage);
  auto keep = rng.sample_indices(tweets.size(), cap);
  std::vector<Tweet> out;
  out.reserve(cap);
  for (std::size_t i : keep) out.push_back(tweets[i]);
  return out;
}

}  // namespace

SplitDataset temporal_split(const Corpus& corpus, int cap, std::uint64_t seed,
                            MidpointRule rule) {
  if (cap < 1) throw std::invalid_argument("temporal_split: cap must be >= 1");
  SplitDataset out;
  out.campaign = corpus.campaign;
  out.seed = seed;
  out.midpoint = campaign_midpoint(corpus, rule);

  auto index = build_user_index(corpus);
  for (const auto& [user, entry] : index) {
    std::vector<Tweet> before, after;
    for (std::size_t i : entry.tweet_indices) {
      const Tweet& t = corpus.tweets[i];
      (t.timestamp <= out.midpoint ? before : after).push_back(t);
    }
    if (!before.empty()) {
      out.train_users.insert(user);
      auto kept = cap_tweets(before, static_cast<std::size_t>(cap), seed, user, "cap");
      out.train.insert(out.train.end(), kept.begin(), kept.end());
    } else if (!after.empty()) {
      out.test_users.insert(user);
      auto kept = cap_tweets(after, static_cast<std::size_t>(cap), seed, user, "cap");
      out.test.insert(out.test.end(), kept.begin(), kept.end());
    }
  }
  return out;
}

SplitDataset tweet_task_subsample(const SplitDataset& split, int k, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("tweet_task_subsample: k must be >= 1");
  SplitDataset out = split;
  for (auto* part : {&out.train, &out.test}) {
    std::map<std::string, std::vector<Tweet>> by_user;
    for (const Tweet& t : *part) by_user[t.author_id].push_back(t);
    part->clear();
    for (auto& [user, tweets] : by_user) {
      auto kept = cap_tweets(tweets, static_cast<std::size_t>(k), seed, user, "subsample");
      part->insert(part->end(), kept.begin(), kept.end());
    }
  }
  return out;
}

std::pair<std::vector<Tweet>, std::vector<Tweet>> train_val_split(
    const std::vector<Tweet>& tweets, double frac, std::uint64_t seed) {
  if (!(frac > 0.0 && frac < 1.0)) throw std::invalid_argument("train_val_split: frac out of (0,1)");
  if (tweets.size() < 2) throw std::invalid_argument("train_val_split: need at least 2 tweets");

  std::vector<Tweet> train, validation;
  for (Label label : {Label::driver, Label::organic}) {
    std::vector<Tweet> group;
    for (const Tweet& t : tweets)
      if (t.label == label) group.push_back(t);
    if (group.empty()) continue;
    Rng rng = keyed_rng(seed, std::string("train_val\x1f") + to_string(label));
    rng.shuffle(group);
    auto n_train = static_cast<std::size_t>(
        std::llround(frac * static_cast<double>(group.size())));
    n_train = std::min(n_train, group.size());
    train.insert(train.end(), group.begin(), group.begin() + n_train);
    validation.insert(validation.end(), group.begin() + n_train, group.end());
  }
  return {std::move(train), std::move(validation)};
}

void write_split_manifest(const std::filesystem::path& path, const SplitDataset& split,
                          const std::vector<Tweet>* validation) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  std::unordered_set<std::string> val_ids;
  if (validation)
    for (const Tweet& t : *validation) val_ids.insert(t.tweet_id);
  auto emit = [&](const Tweet& t, const char* tag) {
    json j;
    j["tweet_id"] = t.tweet_id;
    j["partition"] = tag;
    out << j.dump() << '\n';
  };
  for (const Tweet& t : split.train) emit(t, val_ids.count(t.tweet_id) ? "validation" : "train");
  for (const Tweet& t : split.test) emit(t, "test");
}

std::map<std::string, std::string> read_split_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    out[j.at("tweet_id").get<std::string>()] = j.at("partition").get<std::string>();
  }
  return out;
}

}  // namespace infoops
