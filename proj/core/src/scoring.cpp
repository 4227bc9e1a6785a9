#include "infoops/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "infoops/util.hpp"

namespace infoops {

UserScore user_content_score(const std::vector<BinaryDecision>& decisions,
                             const std::string& user_id) {
  if (decisions.empty())
    throw std::invalid_argument("user_content_score: no decisions for '" + user_id + "'");
  int positives = 0;
  for (const auto& d : decisions)
    if (d.value == Decision::Positive) ++positives;
  UserScore s;
  s.user_id = user_id;
  s.n_tweets = static_cast<int>(decisions.size());
  s.score = static_cast<double>(positives) / static_cast<double>(decisions.size());
  return s;
}

namespace {

double objective_at(const std::vector<UserScore>& scores, double threshold,
                    ThresholdObjective objective) {
  // Tuning treats a boundary score as driver (>=); final classification is
  // strict (>). With midpoint candidates the two only differ at the 0/1
  // boundary candidates, where >= keeps the degenerate candidates from
  // shadowing the midpoints.
  int tp = 0, fp = 0, fn = 0, tn = 0;
  for (const auto& s : scores) {
    bool predicted_driver = s.score >= threshold;
    bool is_driver = s.label == Label::driver;
    if (predicted_driver)
      (is_driver ? tp : fp)++;
    else
      (is_driver ? fn : tn)++;
  }
  if (objective == ThresholdObjective::youden_j) {
    double tpr = tp + fn > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
    double fpr = fp + tn > 0 ? static_cast<double>(fp) / (fp + tn) : 0.0;
    return tpr - fpr;
  }
  double precision = tp + fp > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
  double recall = tp + fn > 0 ? static_cast<double>(tp) / (tp + fn) : 0.0;
  return precision + recall > 0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
}

}  // namespace

ThresholdModel tune_threshold(const std::vector<UserScore>& validation,
                              ThresholdObjective objective) {
  bool has_driver = false, has_organic = false;
  for (const auto& s : validation) {
    if (!s.label) throw std::invalid_argument("tune_threshold: unlabeled validation score");
    (*s.label == Label::driver ? has_driver : has_organic) = true;
  }
  if (!has_driver || !has_organic)
    throw std::invalid_argument("tune_threshold: validation set must contain both classes");

  std::vector<double> distinct;
  for (const auto& s : validation) distinct.push_back(s.score);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  std::vector<double> candidates{0.0};
  for (std::size_t i = 0; i + 1 < distinct.size(); ++i)
    candidates.push_back((distinct[i] + distinct[i + 1]) / 2.0);
  candidates.push_back(1.0);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  ThresholdModel model;
  model.candidates_examined = static_cast<int>(candidates.size());
  model.threshold = candidates.front();
  model.validation_objective = objective_at(validation, candidates.front(), objective);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    double value = objective_at(validation, candidates[i], objective);
    if (value > model.validation_objective) {
      model.validation_objective = value;
      model.threshold = candidates[i];
    }
  }
  return model;
}

std::map<std::string, Label> classify_users(const std::vector<UserScore>& test,
                                            const ThresholdModel& model) {
  std::map<std::string, Label> out;
  for (const auto& s : test)
    out[s.user_id] = s.score > model.threshold ? Label::driver : Label::organic;
  return out;
}

void write_score_csv(const std::vector<UserScore>& scores,
                     const std::map<std::string, Label>* predictions,
                     const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "user_id,score,n_tweets,label,prediction\n";
  for (const auto& s : scores) {
    out << s.user_id << ',' << format_fixed(s.score, 6) << ',' << s.n_tweets << ','
        << (s.label ? to_string(*s.label) : "") << ',';
    if (predictions) {
      auto it = predictions->find(s.user_id);
      if (it != predictions->end()) out << to_string(it->second);
    }
    out << '\n';
  }
}

std::vector<UserScore> read_score_csv(const std::filesystem::path& path,
                                      std::map<std::string, Label>* predictions) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<UserScore> out;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string user, score, n, label, prediction;
    std::getline(row, user, ',');
    std::getline(row, score, ',');
    std::getline(row, n, ',');
    std::getline(row, label, ',');
    std::getline(row, prediction, ',');
    UserScore s;
    s.user_id = user;
    s.score = std::stod(score);
    s.n_tweets = std::stoi(n);
    if (!label.empty()) s.label = label_from_string(label);
    if (predictions && !prediction.empty()) (*predictions)[user] = label_from_string(prediction);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace infoops
