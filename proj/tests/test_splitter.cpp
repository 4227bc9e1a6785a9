#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <map>

#include "infoops/splitter.hpp"

using namespace infoops;

namespace {

Tweet make_tweet(const std::string& id, const std::string& author, std::int64_t ts,
                 Label label) {
  Tweet t;
  t.tweet_id = id;
  t.author_id = author;
  t.timestamp = ts;
  t.text = "t";
  t.label = label;
  t.campaign = "c1";
  return t;
}

Corpus corpus_with_timestamps(std::initializer_list<std::int64_t> stamps) {
  Corpus c;
  c.campaign = "c1";
  int i = 0;
  for (auto ts : stamps)
    c.tweets.push_back(make_tweet("t" + std::to_string(i++), "u" + std::to_string(i), ts,
                                  Label::organic));
  return c;
}

}  // namespace

TEST_CASE("campaign_midpoint interval-center rule") {
  CHECK(campaign_midpoint(corpus_with_timestamps({0, 10, 100})) == 50);
  CHECK(campaign_midpoint(corpus_with_timestamps({42})) == 42);
  CHECK(campaign_midpoint(corpus_with_timestamps({5, 8})) == 6);
  CHECK_THROWS(campaign_midpoint(Corpus{}));
}

TEST_CASE("campaign_midpoint median rule") {
  CHECK(campaign_midpoint(corpus_with_timestamps({0, 10, 100}), MidpointRule::median_timestamp) ==
        10);
}

TEST_CASE("straddling users go to train, later tweets discarded") {
  Corpus c;
  c.campaign = "c1";
  c.tweets = {make_tweet("a1", "A", 10, Label::driver), make_tweet("a2", "A", 90, Label::driver),
              make_tweet("b1", "B", 0, Label::organic), make_tweet("b2", "B", 100, Label::organic),
              make_tweet("c1", "C", 80, Label::organic)};
  SplitDataset s = temporal_split(c, 100, 0);
  CHECK(s.midpoint == 50);
  CHECK(s.train_users == std::set<std::string>{"A", "B"});
  CHECK(s.test_users == std::set<std::string>{"C"});
  REQUIRE(s.train.size() == 2);
  for (const Tweet& t : s.train) CHECK(t.timestamp <= 50);
  REQUIRE(s.test.size() == 1);
  CHECK(s.test[0].tweet_id == "c1");
}

TEST_CASE("per-user cap retains exactly cap tweets, reproducibly") {
  Corpus c;
  c.campaign = "c1";
  for (int i = 0; i < 150; ++i)
    c.tweets.push_back(make_tweet("t" + std::to_string(i), "B", i % 40, Label::organic));
  c.tweets.push_back(make_tweet("late", "Z", 1000, Label::driver));
  SplitDataset s1 = temporal_split(c, 100, 7);
  SplitDataset s2 = temporal_split(c, 100, 7);
  auto count_b = [](const SplitDataset& s) {
    return std::count_if(s.train.begin(), s.train.end(),
                         [](const Tweet& t) { return t.author_id == "B"; });
  };
  CHECK(count_b(s1) == 100);
  CHECK(s1.train == s2.train);
  CHECK(temporal_split(c, 100, 8).train != s1.train);
}

TEST_CASE("all users before the midpoint leaves an empty test set") {
  Corpus c;
  c.campaign = "c1";
  c.tweets = {make_tweet("a1", "A", 0, Label::driver), make_tweet("a2", "A", 100, Label::driver),
              make_tweet("b1", "B", 1, Label::organic)};
  SplitDataset s = temporal_split(c, 100, 0);
  CHECK(s.test.empty());
  CHECK_FALSE(s.train.empty());
}

TEST_CASE("tweet_task_subsample keeps min(k, available) per user") {
  Corpus c;
  c.campaign = "c1";
  for (int i = 0; i < 25; ++i)
    c.tweets.push_back(make_tweet("m" + std::to_string(i), "M", i % 10, Label::driver));
  for (int i = 0; i < 4; ++i)
    c.tweets.push_back(make_tweet("f" + std::to_string(i), "F", i, Label::organic));
  c.tweets.push_back(make_tweet("late", "Z", 1000, Label::driver));

  SplitDataset s = temporal_split(c, 100, 3);
  SplitDataset sub = tweet_task_subsample(s, 10, 3);
  std::map<std::string, int> counts;
  for (const Tweet& t : sub.train) counts[t.author_id]++;
  CHECK(counts["M"] == 10);
  CHECK(counts["F"] == 4);
  CHECK(sub.train_users == s.train_users);
  CHECK(sub.test_users == s.test_users);
  CHECK(tweet_task_subsample(s, 10, 3).train == sub.train);
}

TEST_CASE("train_val_split is stratified and seed-stable") {
  std::vector<Tweet> tweets;
  for (int i = 0; i < 100; ++i)
    tweets.push_back(make_tweet("t" + std::to_string(i), "u" + std::to_string(i), i,
                                i < 20 ? Label::driver : Label::organic));
  auto [train, val] = train_val_split(tweets, 0.9, 5);
  CHECK(train.size() == 90);
  CHECK(val.size() == 10);
  auto drivers = [](const std::vector<Tweet>& v) {
    return std::count_if(v.begin(), v.end(),
                         [](const Tweet& t) { return t.label == Label::driver; });
  };
  CHECK(drivers(train) == 18);
  CHECK(drivers(val) == 2);

  auto again = train_val_split(tweets, 0.9, 5);
  CHECK(again.first == train);
  CHECK(again.second == val);

  // Union equals input as a multiset.
  std::multiset<std::string> in, out;
  for (const Tweet& t : tweets) in.insert(t.tweet_id);
  for (const Tweet& t : train) out.insert(t.tweet_id);
  for (const Tweet& t : val) out.insert(t.tweet_id);
  CHECK(in == out);
}

TEST_CASE("train_val_split rounding and error cases") {
  std::vector<Tweet> ten;
  for (int i = 0; i < 10; ++i)
    ten.push_back(make_tweet("t" + std::to_string(i), "u", i,
                             i < 2 ? Label::driver : Label::organic));
  auto [train, val] = train_val_split(ten, 0.9, 0);
  CHECK(train.size() == 9);
  CHECK(val.size() == 1);
  CHECK_THROWS(train_val_split({ten[0]}, 0.9, 0));
  CHECK_THROWS(train_val_split(ten, 0.0, 0));
  CHECK_THROWS(train_val_split(ten, 1.0, 0));
}

TEST_CASE("split invariants hold for many seeds") {
  Corpus c;
  c.campaign = "c1";
  for (int u = 0; u < 40; ++u)
    for (int k = 0; k < 8; ++k)
      c.tweets.push_back(make_tweet("t" + std::to_string(u * 8 + k), "u" + std::to_string(u),
                                    (u * 37 + k * 13) % 200, u % 4 == 0 ? Label::driver
                                                                        : Label::organic));
  for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
    SplitDataset s = temporal_split(c, 5, seed);
    std::vector<std::string> overlap;
    std::set_intersection(s.train_users.begin(), s.train_users.end(), s.test_users.begin(),
                          s.test_users.end(), std::back_inserter(overlap));
    CHECK(overlap.empty());
    std::map<std::string, int> counts;
    for (const Tweet& t : s.train) {
      CHECK(t.timestamp <= s.midpoint);
      counts[t.author_id]++;
    }
    for (const Tweet& t : s.test) {
      CHECK(t.timestamp > s.midpoint);
      counts[t.author_id]++;
    }
    for (const auto& [user, n] : counts) CHECK(n <= 5);
  }
}

TEST_CASE("split manifest round trip") {
  Corpus c;
  c.campaign = "c1";
  c.tweets = {make_tweet("a", "A", 0, Label::driver), make_tweet("b", "B", 100, Label::organic)};
  SplitDataset s = temporal_split(c, 100, 0);
  std::vector<Tweet> validation{s.train[0]};
  auto path = std::filesystem::temp_directory_path() / "infoops_split_manifest.ndjson";
  write_split_manifest(path, s, &validation);
  auto tags = read_split_manifest(path);
  CHECK(tags.at("a") == "validation");
  CHECK(tags.at("b") == "test");
}
