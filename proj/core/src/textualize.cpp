#include "infoops/textualize.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include <json.hpp>

#include "infoops/util.hpp"

namespace infoops {

using json = nlohmann::ordered_json;

std::string to_string(TextKind kind) {
  switch (kind) {
    case TextKind::interaction: return "interaction";
    case TextKind::centrality: return "centrality";
    case TextKind::metadata: return "metadata";
    case TextKind::content: return "content";
    case TextKind::multi: return "multi";
  }
  throw std::logic_error("bad TextKind");
}

TextKind text_kind_from_string(const std::string& s) {
  for (TextKind k : {TextKind::interaction, TextKind::centrality, TextKind::metadata,
                     TextKind::content, TextKind::multi})
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown text kind '" + s + "'");
}

UserTextInput interaction_text(const std::string& user_id, const RetweetGraph& g) {
  int u = g.node_of(user_id);
  std::vector<std::string> neighbors;
  for (const auto& [v, w] : g.out_edges[u]) neighbors.push_back(g.nodes[v]);
  std::sort(neighbors.begin(), neighbors.end(),
            [](const std::string& a, const std::string& b) { return natural_less(a, b); });

  std::string text = "User " + user_id + " is connected to ";
  if (neighbors.empty()) {
    text += "no one.";
  } else {
    for (std::size_t i = 0; i < neighbors.size(); ++i) {
      if (i) text += ", ";
      text += neighbors[i];
    }
    text += '.';
  }
  return {user_id, TextKind::interaction, text};
}

UserTextInput centrality_text(const std::string& user_id, const CentralityTable& table,
                              int decimals) {
  int row = table.row_of(user_id);
  std::string text = "User " + user_id + " has a degree centrality of " +
                     format_fixed(table.degree[row], decimals) +
                     ", an eigenvector centrality of " +
                     format_fixed(table.eigenvector[row], decimals) +
                     ", and a PageRank centrality of " +
                     format_fixed(table.pagerank[row], decimals) + ".";
  return {user_id, TextKind::centrality, text};
}

std::string normalize_url(const std::string& url, bool* parsed_ok) {
  if (parsed_ok) *parsed_ok = true;
  if (url.empty()) {
    if (parsed_ok) *parsed_ok = false;
    return url;
  }

  std::string rest = url;
  auto scheme_pos = rest.find("://");
  if (scheme_pos != std::string::npos) rest = rest.substr(scheme_pos + 3);

  auto host_end = rest.find_first_of("/?#");
  std::string host = rest.substr(0, host_end);
  // Strip port and credentials from the host component.
  if (auto at = host.find('@'); at != std::string::npos) host = host.substr(at + 1);
  if (auto colon = host.find(':'); colon != std::string::npos) host = host.substr(0, colon);
  if (host.empty()) {
    if (parsed_ok) *parsed_ok = false;
    return url;
  }

  std::string host_lc = to_lower(host);
  if (host_lc.rfind("www.", 0) == 0) host_lc = host_lc.substr(4);
  bool last_segment_host = host_lc == "t.me" || host_lc == "t.co" ||
                           host_lc == "twitter.com" || host_lc == "x.com";
  if (last_segment_host && host_end != std::string::npos && rest[host_end] == '/') {
    std::string path = rest.substr(host_end + 1);
    if (auto cut = path.find_first_of("?#"); cut != std::string::npos) path = path.substr(0, cut);
    while (!path.empty() && path.back() == '/') path.pop_back();
    if (auto slash = path.rfind('/'); slash != std::string::npos) path = path.substr(slash + 1);
    if (!path.empty()) return path;
  }
  return host;
}

namespace {

std::string join_or_none(const std::vector<std::string>& items) {
  if (items.empty()) return "none";
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  return out;
}

// First-occurrence-order dedup.
void push_unique(std::vector<std::string>& out, std::unordered_set<std::string>& seen,
                 const std::string& item) {
  if (item.empty()) return;
  if (seen.insert(item).second) out.push_back(item);
}

}  // namespace

UserTextInput metadata_text(const std::string& user_id, const std::vector<Tweet>& tweets) {
  std::vector<std::string> hashtags, urls, mentions;
  std::unordered_set<std::string> seen_h, seen_u, seen_m;
  for (const Tweet& t : tweets) {
    if (t.author_id != user_id)
      throw std::invalid_argument("metadata_text: tweet " + t.tweet_id +
                                  " not authored by " + user_id);
    for (const std::string& h : t.hashtags) {
      std::string tag = to_lower(h);
      if (!tag.empty() && tag[0] == '#') tag = tag.substr(1);
      push_unique(hashtags, seen_h, tag);
    }
    for (const std::string& u : t.urls) push_unique(urls, seen_u, normalize_url(u));
    for (const std::string& m : t.mentions) {
      std::string handle = m;
      if (!handle.empty() && handle[0] == '@') handle = handle.substr(1);
      push_unique(mentions, seen_m, handle);
    }
  }
  std::string text = "The user has the following metadata: hashtags: " +
                     join_or_none(hashtags) + "; URLs: " + join_or_none(urls) +
                     "; mentions: " + join_or_none(mentions) + ".";
  return {user_id, TextKind::metadata, text};
}

UserTextInput content_score_text(const std::string& user_id, double score) {
  if (!(score >= 0.0 && score <= 1.0))
    throw std::invalid_argument("content score out of [0,1]");
  return {user_id, TextKind::content,
          "The user has a content score of " + format_fixed(score, 4) + "."};
}

UserTextInput multi_input_text(const std::vector<UserTextInput>& parts) {
  if (parts.empty()) throw std::invalid_argument("multi_input_text: no parts");
  for (const auto& p : parts)
    if (p.user_id != parts.front().user_id)
      throw std::invalid_argument("multi_input_text: mixed user ids");

  std::vector<UserTextInput> ordered = parts;
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const UserTextInput& a, const UserTextInput& b) {
                     return static_cast<int>(a.kind) < static_cast<int>(b.kind);
                   });
  std::string text;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    if (i) text += '\n';
    text += ordered[i].text;
  }
  return {parts.front().user_id, TextKind::multi, text};
}

void write_text_inputs(const std::filesystem::path& path,
                       const std::vector<UserTextInput>& inputs) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const auto& t : inputs) {
    json j;
    j["user_id"] = t.user_id;
    j["kind"] = to_string(t.kind);
    j["text"] = t.text;
    out << j.dump() << '\n';
  }
}

std::vector<UserTextInput> read_text_inputs(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<UserTextInput> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    out.push_back({j.at("user_id").get<std::string>(),
                   text_kind_from_string(j.at("kind").get<std::string>()),
                   j.at("text").get<std::string>()});
  }
  return out;
}

}  // namespace infoops
