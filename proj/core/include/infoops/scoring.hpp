#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "infoops/corpus.hpp"
#include "infoops/decision.hpp"

namespace infoops {

struct UserScore {
  std::string user_id;
  double score = 0.0;  // fraction of Positive decisions; ParseFailure counts as Negative
  int n_tweets = 0;
  std::optional<Label> label;
};

struct ThresholdModel {
  double threshold = 0.0;
  double validation_objective = 0.0;
  int candidates_examined = 0;
};

enum class ThresholdObjective { youden_j, f1 };

UserScore user_content_score(const std::vector<BinaryDecision>& decisions,
                             const std::string& user_id);

// Candidate thresholds are the midpoints between adjacent distinct sorted
// scores plus the 0/1 boundaries; ties break toward the smallest threshold.
ThresholdModel tune_threshold(const std::vector<UserScore>& validation,
                              ThresholdObjective objective = ThresholdObjective::youden_j);

// driver iff score > threshold (strict).
std::map<std::string, Label> classify_users(const std::vector<UserScore>& test,
                                            const ThresholdModel& model);

// CSV: user_id,score,n_tweets,label,prediction
void write_score_csv(const std::vector<UserScore>& scores,
                     const std::map<std::string, Label>* predictions,
                     const std::filesystem::path& path);
std::vector<UserScore> read_score_csv(const std::filesystem::path& path,
                                      std::map<std::string, Label>* predictions = nullptr);

}  // namespace infoops
