#pragma once

// JSONL tweet ingestion and platform partitioning.

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace emojimap {

enum class Platform { Android, iOS, Twitter, Windows, Unknown };

const char* platform_name(Platform p);
std::optional<Platform> platform_from_name(const std::string& name);

struct Tweet {
  std::string id;
  std::string text;
  std::string source;
  Platform platform = Platform::Unknown;
};

// Exact, case-sensitive source string -> platform table. Defaults cover the
// seven client names grouped into the four platforms.
class SourceTable {
 public:
  static SourceTable defaults();
  // TSV: source<TAB>platform, '#' comments. Entries extend the defaults.
  static SourceTable load(const std::string& path);

  void add(const std::string& source, Platform p) { table_[source] = p; }
  Platform detect(const std::string& source) const;

 private:
  std::map<std::string, Platform> table_;
};

struct RecordError {
  enum Kind { MalformedJson, MissingField } kind;
  std::string field;    // set for MissingField
  std::size_t line_no;  // 1-based
};

// One JSONL record -> Tweet. On error fills *err (if non-null) and returns
// nullopt so the caller can keep streaming.
std::optional<Tweet> parse_tweet_record(const std::string& line,
                                        const SourceTable& sources,
                                        RecordError* err = nullptr);

struct PlatformCorpus {
  Platform platform = Platform::Unknown;
  std::vector<Tweet> tweets;
};

struct PartitionResult {
  std::map<Platform, PlatformCorpus> corpora;  // Unknown never present
  std::size_t dropped_unknown = 0;
  std::size_t dropped_malformed = 0;
  std::vector<RecordError> errors;
  std::size_t total_records = 0;
};

struct IngestOptions {
  bool dedupe_by_id = false;
};

PartitionResult partition_stream(std::istream& in, const SourceTable& sources,
                                 const IngestOptions& opts = {});
PartitionResult partition_file(const std::string& path, const SourceTable& sources,
                               const IngestOptions& opts = {});

// Corpus JSONL round-trip (ingest output -> later stages' input).
void write_corpus_jsonl(const PlatformCorpus& corpus, const std::string& path);
PlatformCorpus read_corpus_jsonl(const std::string& path, Platform platform,
                                 const SourceTable& sources);

}  // namespace emojimap
