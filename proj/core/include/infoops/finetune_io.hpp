#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "infoops/decision.hpp"

namespace infoops {

struct InstructionRecord {
  std::string instruction;
  std::string input;
  std::string output;  // "True" or "False"

  bool operator==(const InstructionRecord&) const = default;
};

enum class Task { tweet, user };

std::string to_string(Task t);
Task task_from_string(const std::string& s);

struct KeyedRecord {
  std::string key;  // tweet_id or user_id
  InstructionRecord record;
};

struct Prediction {
  std::string key;
  Decision decision = Decision::ParseFailure;
  std::string raw;
};

struct PredictionSet {
  Task task = Task::tweet;
  std::vector<Prediction> entries;
};

// Writes the records as a single JSON array with keys instruction/input/output
// plus a sidecar NDJSON index mapping array position -> record key. The record
// format itself carries no identifier, the index restores it.
void emit_instruction_file(const std::vector<KeyedRecord>& records,
                           const std::filesystem::path& data_path,
                           const std::filesystem::path& index_path, Task task);

std::vector<InstructionRecord> read_instruction_file(const std::filesystem::path& data_path);

// Accepts either NDJSON objects {"predict": ...} or plain text, one generation
// per line; generations are aligned to keys through the index file.
PredictionSet parse_prediction_file(const std::filesystem::path& pred_path,
                                    const std::filesystem::path& index_path);

void write_prediction_set(const PredictionSet& set, const std::filesystem::path& path);
PredictionSet read_prediction_set(const std::filesystem::path& path);

}  // namespace infoops
