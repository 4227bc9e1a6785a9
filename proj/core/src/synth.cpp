#include "infoops/synth.hpp"

#include <cmath>
#include <stdexcept>

#include "infoops/rng.hpp"

namespace infoops {

namespace {

void check(const SynthParams& p) {
  if (p.n_users < 2) throw std::invalid_argument("synth: need at least 2 users");
  if (!(p.driver_fraction > 0.0 && p.driver_fraction < 1.0))
    throw std::invalid_argument("synth: driver_fraction out of (0,1)");
  if (p.time_window.first >= p.time_window.second)
    throw std::invalid_argument("synth: empty time window");
  if (p.tweets_per_user_range.first < 1 ||
      p.tweets_per_user_range.second < p.tweets_per_user_range.first)
    throw std::invalid_argument("synth: bad tweets_per_user_range");
  for (double prob : {p.p_retweet, p.p_driver_retweets_driver, p.p_organic_retweets_driver,
                      p.p_campaign_hashtag, p.late_user_fraction})
    if (!(prob >= 0.0 && prob <= 1.0)) throw std::invalid_argument("synth: probability out of [0,1]");
  if (p.campaign_hashtag_pool < 1 || p.background_hashtag_pool < 1)
    throw std::invalid_argument("synth: hashtag pools must be >= 1");
}

std::string user_id_for(int i) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "u%06d", i);
  return buf;
}

}  // namespace

Corpus generate_campaign(const SynthParams& params) {
  check(params);

  const int n_drivers = std::max(
      1, static_cast<int>(std::llround(params.driver_fraction * params.n_users)));
  const auto [t0, t1] = params.time_window;
  const auto [lo, hi] = params.tweets_per_user_range;

  Corpus corpus;
  corpus.campaign = params.campaign;
  int tweet_serial = 0;

  for (int i = 0; i < params.n_users; ++i) {
    const bool is_driver = i < n_drivers;
    const std::string author = user_id_for(i);
    Rng rng = keyed_rng(params.seed, "synth\x1f" + author);

    const bool is_late = rng.bernoulli(params.late_user_fraction);
    const std::int64_t user_t0 = is_late ? t0 + (t1 - t0) / 2 + 1 : t0;

    int n_tweets = lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
    for (int k = 0; k < n_tweets; ++k) {
      Tweet t;
      char id[24];
      std::snprintf(id, sizeof(id), "t%09d", tweet_serial++);
      t.tweet_id = id;
      t.author_id = author;
      t.label = is_driver ? Label::driver : Label::organic;
      t.campaign = params.campaign;
      t.timestamp = user_t0 + static_cast<std::int64_t>(
                                  rng.below(static_cast<std::uint64_t>(t1 - user_t0 + 1)));

      if (rng.bernoulli(params.p_retweet)) {
        double p_target_driver =
            is_driver ? params.p_driver_retweets_driver : params.p_organic_retweets_driver;
        int target;
        if (rng.bernoulli(p_target_driver))
          target = static_cast<int>(rng.below(static_cast<std::uint64_t>(n_drivers)));
        else
          target = n_drivers + static_cast<int>(rng.below(
                                   static_cast<std::uint64_t>(params.n_users - n_drivers)));
        t.is_retweet = true;
        t.retweeted_author_id = user_id_for(target);
      }

      int n_tags = 1 + static_cast<int>(rng.below(3));
      for (int h = 0; h < n_tags; ++h) {
        bool campaign_tag = is_driver ? rng.bernoulli(params.p_campaign_hashtag)
                                      : rng.bernoulli(1.0 - params.p_campaign_hashtag);
        int pool = campaign_tag ? params.campaign_hashtag_pool : params.background_hashtag_pool;
        std::string tag = (campaign_tag ? "camp" : "bg") +
                          std::to_string(rng.below(static_cast<std::uint64_t>(pool)));
        t.hashtags.push_back(tag);
      }

      if (rng.bernoulli(0.2))
        t.urls.push_back("https://example" + std::to_string(rng.below(20)) + ".org/a/" +
                         std::to_string(rng.below(1000)));
      if (rng.bernoulli(0.2))
        t.mentions.push_back(
            user_id_for(static_cast<int>(rng.below(static_cast<std::uint64_t>(params.n_users)))));

      std::string topic = t.hashtags.front();
      t.text = "post " + t.tweet_id + " by " + author + " about " + topic;
      for (const std::string& tag : t.hashtags) t.text += " #" + tag;
      for (const std::string& u : t.urls) t.text += " " + u;
      for (const std::string& m : t.mentions) t.text += " @" + m;

      corpus.tweets.push_back(std::move(t));
    }
  }

  validate_corpus(corpus);
  return corpus;
}

}  // namespace infoops
