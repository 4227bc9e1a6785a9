#include "infoops/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "infoops/util.hpp"

namespace infoops {

using json = nlohmann::ordered_json;

std::string to_string(Label label) {
  return label == Label::driver ? "driver" : "organic";
}

Label label_from_string(const std::string& s) {
  if (s == "driver") return Label::driver;
  if (s == "organic") return Label::organic;
  throw IngestError("unknown label '" + s + "'");
}

namespace {

const char* kCsvHeader =
    "tweet_id,author_id,timestamp,text,is_retweet,retweeted_author_id,"
    "hashtags,urls,mentions,label,campaign";

bool is_url_token(const std::string& t) {
  return t.find("://") != std::string::npos || t.rfind("www.", 0) == 0;
}

std::string strip_trailing_punct(std::string t) {
  while (!t.empty()) {
    char c = t.back();
    if (c == '.' || c == ',' || c == ';' || c == ':' || c == '!' || c == '?' ||
        c == ')' || c == '"' || c == '\'')
      t.pop_back();
    else
      break;
  }
  return t;
}

}  // namespace

Entities extract_entities(const std::string& text) {
  Entities out;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    if (is_url_token(token)) {
      std::string u = strip_trailing_punct(token);
      if (!u.empty()) out.urls.push_back(u);
    } else if (token.size() > 1 && token[0] == '#') {
      std::string h = strip_trailing_punct(token.substr(1));
      if (!h.empty()) out.hashtags.push_back(h);
    } else if (token.size() > 1 && token[0] == '@') {
      std::string m = strip_trailing_punct(token.substr(1));
      if (!m.empty()) out.mentions.push_back(m);
    }
  }
  return out;
}

namespace {

std::vector<std::string> string_list(const json& j, const char* key, std::size_t line) {
  std::vector<std::string> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_string()) throw IngestError(std::string(key) + " entry is not a string", line);
    out.push_back(v.get<std::string>());
  }
  return out;
}

Tweet tweet_from_json(const json& j, std::size_t line) {
  Tweet t;
  try {
    t.tweet_id = j.at("tweet_id").get<std::string>();
    t.author_id = j.at("author_id").get<std::string>();
    t.timestamp = j.at("timestamp").get<std::int64_t>();
    t.text = j.at("text").get<std::string>();
    t.is_retweet = j.at("is_retweet").get<bool>();
    if (j.contains("retweeted_author_id") && !j["retweeted_author_id"].is_null())
      t.retweeted_author_id = j["retweeted_author_id"].get<std::string>();
    t.label = label_from_string(j.at("label").get<std::string>());
    t.campaign = j.at("campaign").get<std::string>();
  } catch (const json::exception& e) {
    throw IngestError(std::string("malformed record: ") + e.what(), line);
  }
  Entities extracted;
  bool need_extract = !j.contains("hashtags") || !j.contains("urls") || !j.contains("mentions");
  if (need_extract) extracted = extract_entities(t.text);
  t.hashtags = j.contains("hashtags") ? string_list(j, "hashtags", line) : extracted.hashtags;
  t.urls = j.contains("urls") ? string_list(j, "urls", line) : extracted.urls;
  t.mentions = j.contains("mentions") ? string_list(j, "mentions", line) : extracted.mentions;
  return t;
}

std::vector<std::string> split_csv_line(const std::string& line, std::size_t lineno) {
  std::vector<std::string> fields;
  std::string cur;
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (in_quotes) throw IngestError("unterminated quoted field", lineno);
  fields.push_back(cur);
  return fields;
}

std::vector<std::string> split_pipe(const std::string& s) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = s.find('|', start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += '"';
  return out;
}

std::string join_pipe(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += '|';
    out += v[i];
  }
  return out;
}

}  // namespace

Corpus ingest_corpus(const std::filesystem::path& path, CorpusFormat format) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot open " + path.string());

  Corpus corpus;
  std::string line;
  std::size_t lineno = 0;

  if (format == CorpusFormat::ndjson) {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      json j;
      try {
        j = json::parse(line);
      } catch (const json::exception& e) {
        throw IngestError(std::string("malformed record: ") + e.what(), lineno);
      }
      corpus.tweets.push_back(tweet_from_json(j, lineno));
    }
  } else {
    if (!std::getline(in, line)) throw IngestError("empty CSV file");
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto header = split_csv_line(line, lineno);
    std::unordered_map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
    for (const char* name : {"tweet_id", "author_id", "timestamp", "text", "is_retweet",
                             "retweeted_author_id", "hashtags", "urls", "mentions",
                             "label", "campaign"}) {
      if (!col.count(name)) throw IngestError(std::string("missing CSV column '") + name + "'", 1);
    }
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      auto f = split_csv_line(line, lineno);
      if (f.size() != header.size())
        throw IngestError("malformed record: expected " + std::to_string(header.size()) +
                              " fields, got " + std::to_string(f.size()),
                          lineno);
      Tweet t;
      t.tweet_id = f[col["tweet_id"]];
      t.author_id = f[col["author_id"]];
      try {
        t.timestamp = std::stoll(f[col["timestamp"]]);
      } catch (const std::exception&) {
        throw IngestError("malformed record: bad timestamp '" + f[col["timestamp"]] + "'", lineno);
      }
      t.text = f[col["text"]];
      const std::string& rt = f[col["is_retweet"]];
      if (rt == "true" || rt == "1")
        t.is_retweet = true;
      else if (rt == "false" || rt == "0")
        t.is_retweet = false;
      else
        throw IngestError("malformed record: bad is_retweet '" + rt + "'", lineno);
      if (!f[col["retweeted_author_id"]].empty())
        t.retweeted_author_id = f[col["retweeted_author_id"]];
      t.hashtags = split_pipe(f[col["hashtags"]]);
      t.urls = split_pipe(f[col["urls"]]);
      t.mentions = split_pipe(f[col["mentions"]]);
      try {
        t.label = label_from_string(f[col["label"]]);
      } catch (const IngestError& e) {
        throw IngestError(e.what(), lineno);
      }
      t.campaign = f[col["campaign"]];
      corpus.tweets.push_back(std::move(t));
    }
  }

  if (!corpus.tweets.empty()) corpus.campaign = corpus.tweets.front().campaign;
  validate_corpus(corpus);
  return corpus;
}

void validate_corpus(const Corpus& corpus) {
  std::unordered_set<std::string> ids;
  std::unordered_map<std::string, Label> user_label;
  for (const Tweet& t : corpus.tweets) {
    if (t.campaign != corpus.campaign)
      throw IngestError("tweet " + t.tweet_id + " belongs to campaign '" + t.campaign +
                        "', corpus is '" + corpus.campaign + "'");
    if (t.timestamp < 0)
      throw IngestError("tweet " + t.tweet_id + " has negative timestamp");
    if (!ids.insert(t.tweet_id).second)
      throw IngestError("duplicate tweet_id '" + t.tweet_id + "'");
    if (t.is_retweet != t.retweeted_author_id.has_value())
      throw IngestError(t.is_retweet
                            ? "retweet missing source (tweet " + t.tweet_id + ")"
                            : "retweeted_author_id set on non-retweet (tweet " + t.tweet_id + ")");
    auto [it, inserted] = user_label.emplace(t.author_id, t.label);
    if (!inserted && it->second != t.label)
      throw IngestError("inconsistent user label for '" + t.author_id + "'");
    for (const auto* list : {&t.hashtags, &t.urls, &t.mentions})
      for (const std::string& s : *list)
        if (s.empty())
          throw IngestError("empty entity string in tweet " + t.tweet_id);
  }
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& path,
                  CorpusFormat format) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  if (format == CorpusFormat::ndjson) {
    for (const Tweet& t : corpus.tweets) {
      json j;
      j["tweet_id"] = t.tweet_id;
      j["author_id"] = t.author_id;
      j["timestamp"] = t.timestamp;
      j["text"] = t.text;
      j["is_retweet"] = t.is_retweet;
      if (t.retweeted_author_id) j["retweeted_author_id"] = *t.retweeted_author_id;
      j["hashtags"] = t.hashtags;
      j["urls"] = t.urls;
      j["mentions"] = t.mentions;
      j["label"] = to_string(t.label);
      j["campaign"] = t.campaign;
      out << j.dump() << '\n';
    }
  } else {
    out << kCsvHeader << '\n';
    for (const Tweet& t : corpus.tweets) {
      out << csv_quote(t.tweet_id) << ',' << csv_quote(t.author_id) << ',' << t.timestamp
          << ',' << csv_quote(t.text) << ',' << (t.is_retweet ? "true" : "false") << ','
          << csv_quote(t.retweeted_author_id.value_or("")) << ','
          << csv_quote(join_pipe(t.hashtags)) << ',' << csv_quote(join_pipe(t.urls)) << ','
          << csv_quote(join_pipe(t.mentions)) << ',' << to_string(t.label) << ','
          << csv_quote(t.campaign) << '\n';
    }
  }
}

std::map<std::string, UserEntry> build_user_index(const Corpus& corpus) {
  std::map<std::string, UserEntry> index;
  for (std::size_t i = 0; i < corpus.tweets.size(); ++i) {
    const Tweet& t = corpus.tweets[i];
    auto& entry = index[t.author_id];
    entry.label = t.label;
    entry.tweet_indices.push_back(i);
  }
  for (auto& [user, entry] : index) {
    std::sort(entry.tweet_indices.begin(), entry.tweet_indices.end(),
              [&](std::size_t a, std::size_t b) {
                const Tweet& ta = corpus.tweets[a];
                const Tweet& tb = corpus.tweets[b];
                if (ta.timestamp != tb.timestamp) return ta.timestamp < tb.timestamp;
                return ta.tweet_id < tb.tweet_id;
              });
  }
  return index;
}

std::string pseudonym(const std::string& id, const std::string& salt) {
  std::uint64_t h = fnv1a(id, fnv1a("\x1f", fnv1a(salt)));
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Corpus anonymize(const Corpus& corpus, const std::string& salt) {
  if (salt.empty()) throw std::invalid_argument("anonymize: empty salt");
  Corpus out = corpus;
  for (Tweet& t : out.tweets) {
    t.author_id = pseudonym(t.author_id, salt);
    if (t.retweeted_author_id) t.retweeted_author_id = pseudonym(*t.retweeted_author_id, salt);
    for (std::string& m : t.mentions) m = pseudonym(m, salt);
  }
  return out;
}

}  // namespace infoops
