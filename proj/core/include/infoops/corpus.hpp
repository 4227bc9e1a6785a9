#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace infoops {

enum class Label { driver, organic };

std::string to_string(Label label);
Label label_from_string(const std::string& s);

struct Tweet {
  std::string tweet_id;
  std::string author_id;
  std::int64_t timestamp = 0;
  std::string text;
  bool is_retweet = false;
  std::optional<std::string> retweeted_author_id;
  std::vector<std::string> hashtags;
  std::vector<std::string> urls;
  std::vector<std::string> mentions;
  Label label = Label::organic;
  std::string campaign;

  bool operator==(const Tweet&) const = default;
};

// Immutable after ingestion; safe to share across threads.
struct Corpus {
  std::string campaign;
  std::vector<Tweet> tweets;

  bool operator==(const Corpus&) const = default;
};

enum class CorpusFormat { ndjson, csv };

class IngestError : public std::runtime_error {
 public:
  IngestError(const std::string& msg, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct UserEntry {
  Label label = Label::organic;
  // Indices into Corpus::tweets, sorted by (timestamp, tweet_id).
  std::vector<std::size_t> tweet_indices;
};

struct Entities {
  std::vector<std::string> hashtags;
  std::vector<std::string> urls;
  std::vector<std::string> mentions;
};

// Best-effort extraction of #hashtags, @mentions and URLs from the tweet text,
// used as a fallback when an input record ships no pre-extracted entities.
Entities extract_entities(const std::string& text);

Corpus ingest_corpus(const std::filesystem::path& path, CorpusFormat format);
void validate_corpus(const Corpus& corpus);
void write_corpus(const Corpus& corpus, const std::filesystem::path& path,
                  CorpusFormat format);

std::map<std::string, UserEntry> build_user_index(const Corpus& corpus);

// Keyed 64-bit hash rendered as 16 hex chars.
std::string pseudonym(const std::string& id, const std::string& salt);

// Replaces author_id, retweeted_author_id and mentions with pseudonyms.
// Graph structure is preserved up to node relabeling.
Corpus anonymize(const Corpus& corpus, const std::string& salt);

}  // namespace infoops
