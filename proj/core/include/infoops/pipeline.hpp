#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "infoops/evaluation.hpp"
#include "infoops/inference.hpp"
#include "infoops/scoring.hpp"
#include "infoops/splitter.hpp"

namespace infoops {

std::map<std::string, Label> tweet_truth(const std::vector<Tweet>& tweets);
std::map<std::string, Label> user_truth(const std::vector<Tweet>& tweets);

// Groups tweet-level decisions by author into labeled user scores,
// sorted by user_id. ParseFailure counts as Negative.
std::vector<UserScore> user_scores_from_predictions(const std::vector<Tweet>& tweets,
                                                    const PredictionSet& predictions);

struct ContentModelOptions {
  double val_frac = 0.9;
  ThresholdObjective objective = ThresholdObjective::youden_j;
  int prompt_variant = 1;
  int parallelism = 4;
  double failure_threshold = 0.05;
  std::uint64_t seed = 0;
};

struct ContentModelResult {
  std::vector<Tweet> validation_tweets;
  std::vector<UserScore> validation_scores;
  std::vector<UserScore> test_scores;
  ThresholdModel model;
  std::map<std::string, Label> predictions;  // test users
  MetricRow metrics;                         // method "content"
};

// The content-based user model end to end: classify tweets with the backend,
// average decisions into user scores, tune the threshold on validation users,
// classify and evaluate the test users.
ContentModelResult run_content_model(const SplitDataset& split, Backend& backend,
                                     const ContentModelOptions& options = {});

// Same, with an externally fixed validation tweet set (e.g. from a persisted
// split manifest) instead of an internal train/validation split.
ContentModelResult run_content_model(const SplitDataset& split,
                                     const std::set<std::string>& validation_tweet_ids,
                                     Backend& backend,
                                     const ContentModelOptions& options = {});

}  // namespace infoops
