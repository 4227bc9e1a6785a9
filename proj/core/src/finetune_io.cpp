#include "infoops/finetune_io.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace infoops {

using json = nlohmann::ordered_json;

std::string to_string(Task t) { return t == Task::tweet ? "tweet" : "user"; }

Task task_from_string(const std::string& s) {
  if (s == "tweet") return Task::tweet;
  if (s == "user") return Task::user;
  throw std::invalid_argument("unknown task '" + s + "'");
}

void emit_instruction_file(const std::vector<KeyedRecord>& records,
                           const std::filesystem::path& data_path,
                           const std::filesystem::path& index_path, Task task) {
  if (records.empty()) throw std::invalid_argument("emit_instruction_file: no records");
  for (const auto& r : records) {
    if (r.record.instruction.empty())
      throw std::invalid_argument("record '" + r.key + "' has empty instruction");
    if (r.record.output != "True" && r.record.output != "False")
      throw std::invalid_argument("record '" + r.key + "' output must be True or False");
  }

  json arr = json::array();
  for (const auto& r : records) {
    json j;
    j["instruction"] = r.record.instruction;
    j["input"] = r.record.input;
    j["output"] = r.record.output;
    arr.push_back(std::move(j));
  }
  std::ofstream data(data_path);
  if (!data) throw std::runtime_error("cannot write " + data_path.string());
  data << arr.dump(2) << '\n';

  std::ofstream index(index_path);
  if (!index) throw std::runtime_error("cannot write " + index_path.string());
  for (std::size_t i = 0; i < records.size(); ++i) {
    json j;
    j["position"] = i;
    j["key"] = records[i].key;
    j["task"] = to_string(task);
    index << j.dump() << '\n';
  }
}

std::vector<InstructionRecord> read_instruction_file(const std::filesystem::path& data_path) {
  std::ifstream in(data_path);
  if (!in) throw std::runtime_error("cannot open " + data_path.string());
  json arr = json::parse(in);
  if (!arr.is_array()) throw std::runtime_error(data_path.string() + ": expected a JSON array");
  std::vector<InstructionRecord> out;
  out.reserve(arr.size());
  for (const auto& j : arr) {
    out.push_back({j.at("instruction").get<std::string>(), j.at("input").get<std::string>(),
                   j.at("output").get<std::string>()});
  }
  return out;
}

namespace {

struct IndexEntry {
  std::string key;
  Task task = Task::tweet;
};

std::vector<IndexEntry> read_index(const std::filesystem::path& index_path) {
  std::ifstream in(index_path);
  if (!in) throw std::runtime_error("cannot open " + index_path.string());
  std::vector<IndexEntry> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    auto pos = j.at("position").get<std::size_t>();
    if (pos != out.size())
      throw std::runtime_error(index_path.string() + ": non-contiguous positions");
    out.push_back({j.at("key").get<std::string>(),
                   task_from_string(j.at("task").get<std::string>())});
  }
  return out;
}

}  // namespace

PredictionSet parse_prediction_file(const std::filesystem::path& pred_path,
                                    const std::filesystem::path& index_path) {
  auto index = read_index(index_path);

  std::ifstream in(pred_path);
  if (!in) throw std::runtime_error("cannot open " + pred_path.string());
  std::vector<std::string> generations;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.front() == '{') {
      json j = json::parse(line, nullptr, false);
      if (!j.is_discarded() && j.contains("predict")) {
        generations.push_back(j["predict"].get<std::string>());
        continue;
      }
    }
    generations.push_back(line);
  }

  if (generations.size() != index.size())
    throw std::runtime_error("prediction count " + std::to_string(generations.size()) +
                             " does not match index length " + std::to_string(index.size()));

  PredictionSet set;
  set.task = index.empty() ? Task::tweet : index.front().task;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (!seen.insert(index[i].key).second)
      throw std::runtime_error("duplicate key '" + index[i].key + "' in index");
    BinaryDecision d = parse_binary(generations[i]);
    set.entries.push_back({index[i].key, d.value, d.raw});
  }
  return set;
}

void write_prediction_set(const PredictionSet& set, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const auto& e : set.entries) {
    json j;
    j["key"] = e.key;
    j["task"] = to_string(set.task);
    j["decision"] = to_string(e.decision);
    j["raw"] = e.raw;
    out << j.dump() << '\n';
  }
}

PredictionSet read_prediction_set(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  PredictionSet set;
  std::string line;
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    Prediction p{j.at("key").get<std::string>(),
                 decision_from_string(j.at("decision").get<std::string>()),
                 j.value("raw", "")};
    if (!seen.insert(p.key).second)
      throw std::runtime_error("duplicate key '" + p.key + "' in " + path.string());
    if (j.contains("task")) set.task = task_from_string(j["task"].get<std::string>());
    set.entries.push_back(std::move(p));
  }
  return set;
}

}  // namespace infoops
