#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "infoops/corpus.hpp"

namespace infoops {

struct SplitDataset {
  std::string campaign;
  std::int64_t midpoint = 0;
  std::vector<Tweet> train;
  std::vector<Tweet> test;
  std::set<std::string> train_users;
  std::set<std::string> test_users;
  std::uint64_t seed = 0;
};

enum class MidpointRule {
  interval_center,   // floor of the center of [first, last]
  median_timestamp,  // median of all tweet timestamps
};

std::int64_t campaign_midpoint(const Corpus& corpus,
                               MidpointRule rule = MidpointRule::interval_center);

// Temporal split with per-user capping and a user-disjoint test set. Users with
// any tweet at or before the midpoint go to train; their later tweets are
// discarded so no user appears on both sides.
SplitDataset temporal_split(const Corpus& corpus, int cap = 100, std::uint64_t seed = 0,
                            MidpointRule rule = MidpointRule::interval_center);

// Keeps min(k, available) random tweets per user in each partition.
SplitDataset tweet_task_subsample(const SplitDataset& split, int k = 10,
                                  std::uint64_t seed = 0);

// Label-stratified shuffle split of a tweet list.
std::pair<std::vector<Tweet>, std::vector<Tweet>> train_val_split(
    const std::vector<Tweet>& tweets, double frac = 0.9, std::uint64_t seed = 0);

// NDJSON manifest: {"tweet_id": ..., "partition": "train"|"validation"|"test"}.
void write_split_manifest(const std::filesystem::path& path, const SplitDataset& split,
                          const std::vector<Tweet>* validation = nullptr);
std::map<std::string, std::string> read_split_manifest(const std::filesystem::path& path);

}  // namespace infoops
