#pragma once

#include <cstdint>
#include <utility>

#include "infoops/corpus.hpp"

namespace infoops {

// Seeded synthetic campaign with planted coordination: drivers preferentially
// retweet other drivers and lean on a small campaign hashtag pool, organic
// users retweet broadly and use background hashtags.
struct SynthParams {
  int n_users = 1000;
  double driver_fraction = 0.2;
  std::pair<std::int64_t, std::int64_t> time_window{0, 1'000'000};
  std::pair<int, int> tweets_per_user_range{5, 30};
  double p_retweet = 0.5;
  double p_driver_retweets_driver = 0.7;
  double p_organic_retweets_driver = 0.05;
  int campaign_hashtag_pool = 5;
  int background_hashtag_pool = 100;
  double p_campaign_hashtag = 0.8;
  // Share of users (per class) active only in the second half of the window,
  // so a temporal split has a non-empty test side.
  double late_user_fraction = 0.3;
  std::uint64_t seed = 0;
  std::string campaign = "synthetic";
};

Corpus generate_campaign(const SynthParams& params);

}  // namespace infoops
