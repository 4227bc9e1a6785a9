#include "infoops/pipeline.hpp"

#include <algorithm>

#include "infoops/prompting.hpp"

namespace infoops {

std::map<std::string, Label> tweet_truth(const std::vector<Tweet>& tweets) {
  std::map<std::string, Label> out;
  for (const Tweet& t : tweets) out[t.tweet_id] = t.label;
  return out;
}

std::map<std::string, Label> user_truth(const std::vector<Tweet>& tweets) {
  std::map<std::string, Label> out;
  for (const Tweet& t : tweets) out[t.author_id] = t.label;
  return out;
}

std::vector<UserScore> user_scores_from_predictions(const std::vector<Tweet>& tweets,
                                                    const PredictionSet& predictions) {
  std::map<std::string, Prediction> by_key;
  for (const auto& e : predictions.entries) by_key[e.key] = e;

  std::map<std::string, std::vector<BinaryDecision>> by_user;
  std::map<std::string, Label> labels;
  for (const Tweet& t : tweets) {
    auto it = by_key.find(t.tweet_id);
    if (it == by_key.end()) continue;
    by_user[t.author_id].push_back({it->second.decision, it->second.raw, 0.0});
    labels[t.author_id] = t.label;
  }

  std::vector<UserScore> out;
  for (const auto& [user, decisions] : by_user) {
    UserScore s = user_content_score(decisions, user);
    s.label = labels.at(user);
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

PredictionSet classify_tweets(const std::vector<Tweet>& tweets, Backend& backend,
                              const ContentModelOptions& options) {
  std::vector<std::pair<std::string, std::string>> items;
  items.reserve(tweets.size());
  for (const Tweet& t : tweets)
    items.emplace_back(t.tweet_id, zero_shot_prompt(options.prompt_variant, t.text));
  return classify_batch(backend, items, Task::tweet, options.parallelism,
                        options.failure_threshold)
      .predictions;
}

}  // namespace

ContentModelResult run_content_model(const SplitDataset& split, Backend& backend,
                                     const ContentModelOptions& options) {
  auto [ft_train, validation] = train_val_split(split.train, options.val_frac, options.seed);
  (void)ft_train;  // consumed by the external fine-tuner, not needed here
  std::set<std::string> validation_ids;
  for (const Tweet& t : validation) validation_ids.insert(t.tweet_id);
  return run_content_model(split, validation_ids, backend, options);
}

ContentModelResult run_content_model(const SplitDataset& split,
                                     const std::set<std::string>& validation_tweet_ids,
                                     Backend& backend, const ContentModelOptions& options) {
  ContentModelResult result;
  for (const Tweet& t : split.train)
    if (validation_tweet_ids.count(t.tweet_id)) result.validation_tweets.push_back(t);

  auto val_preds = classify_tweets(result.validation_tweets, backend, options);
  result.validation_scores = user_scores_from_predictions(result.validation_tweets, val_preds);
  result.model = tune_threshold(result.validation_scores, options.objective);

  auto test_preds = classify_tweets(split.test, backend, options);
  result.test_scores = user_scores_from_predictions(split.test, test_preds);
  result.predictions = classify_users(result.test_scores, result.model);

  std::vector<Label> predicted, truth;
  std::vector<double> scores;
  for (const auto& s : result.test_scores) {
    predicted.push_back(result.predictions.at(s.user_id));
    truth.push_back(*s.label);
    scores.push_back(s.score);
  }
  Confusion c = confusion_metrics(predicted, truth);
  result.metrics.campaign = split.campaign;
  result.metrics.method = "content";
  result.metrics.precision = c.precision;
  result.metrics.recall = c.recall;
  result.metrics.f1 = c.f1;
  result.metrics.auc = roc_auc(scores, truth);
  std::size_t failures = 0;
  for (const auto& e : test_preds.entries)
    if (e.decision == Decision::ParseFailure) ++failures;
  result.metrics.parse_failure_rate =
      test_preds.entries.empty()
          ? 0.0
          : static_cast<double>(failures) / static_cast<double>(test_preds.entries.size());
  return result;
}

}  // namespace infoops
