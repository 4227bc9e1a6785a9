#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "infoops/corpus.hpp"
#include "infoops/graph.hpp"

namespace infoops {

enum class TextKind { interaction, centrality, metadata, content, multi };

std::string to_string(TextKind kind);
TextKind text_kind_from_string(const std::string& s);

struct UserTextInput {
  std::string user_id;
  TextKind kind = TextKind::interaction;
  std::string text;

  bool operator==(const UserTextInput&) const = default;
};

// "User {u} is connected to {j}, {k}, ...": out-neighbors (accounts the user
// retweeted) in ascending natural order; no out-edges renders "no one".
UserTextInput interaction_text(const std::string& user_id, const RetweetGraph& g);

UserTextInput centrality_text(const std::string& user_id, const CentralityTable& table,
                              int decimals = 6);

// Twitter/Telegram-family hosts keep only the final path segment; every other
// URL is reduced to its host. Unparseable input comes back unchanged with
// *parsed_ok set to false.
std::string normalize_url(const std::string& url, bool* parsed_ok = nullptr);

UserTextInput metadata_text(const std::string& user_id, const std::vector<Tweet>& tweets);

UserTextInput content_score_text(const std::string& user_id, double score);

// Concatenates parts in the fixed order interaction, centrality, metadata,
// content, joined by single newlines.
UserTextInput multi_input_text(const std::vector<UserTextInput>& parts);

void write_text_inputs(const std::filesystem::path& path,
                       const std::vector<UserTextInput>& inputs);
std::vector<UserTextInput> read_text_inputs(const std::filesystem::path& path);

}  // namespace infoops
