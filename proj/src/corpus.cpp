#include "emojimap/corpus.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "emojimap/error.hpp"

namespace emojimap {

using nlohmann::json;

const char* platform_name(Platform p) {
  switch (p) {
    case Platform::Android: return "Android";
    case Platform::iOS: return "iOS";
    case Platform::Twitter: return "Twitter";
    case Platform::Windows: return "Windows";
    case Platform::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::optional<Platform> platform_from_name(const std::string& name) {
  if (name == "Android") return Platform::Android;
  if (name == "iOS") return Platform::iOS;
  if (name == "Twitter") return Platform::Twitter;
  if (name == "Windows") return Platform::Windows;
  if (name == "Unknown") return Platform::Unknown;
  return std::nullopt;
}

SourceTable SourceTable::defaults() {
  SourceTable t;
  t.add("Twitter for Android", Platform::Android);
  t.add("Twitter for iPad", Platform::iOS);
  t.add("Twitter for iPhone", Platform::iOS);
  t.add("Twitter for iOS", Platform::iOS);
  t.add("Twitter Web Client", Platform::Twitter);
  t.add("Twitter for Windows Phone", Platform::Windows);
  t.add("Twitter for Windows", Platform::Windows);
  return t;
}

SourceTable SourceTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open source table: " + path);
  SourceTable t = defaults();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw Error(Errc::ParseError,
                  path + ":" + std::to_string(line_no) + ": expected source<TAB>platform");
    auto p = platform_from_name(line.substr(tab + 1));
    if (!p)
      throw Error(Errc::ParseError,
                  path + ":" + std::to_string(line_no) + ": unknown platform name");
    t.add(line.substr(0, tab), *p);
  }
  return t;
}

Platform SourceTable::detect(const std::string& source) const {
  auto it = table_.find(source);
  return it == table_.end() ? Platform::Unknown : it->second;
}

std::optional<Tweet> parse_tweet_record(const std::string& line,
                                        const SourceTable& sources,
                                        RecordError* err) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    if (err) *err = {RecordError::MalformedJson, "", 0};
    return std::nullopt;
  }
  for (const char* field : {"text", "source"}) {
    if (!j.contains(field) || !j[field].is_string()) {
      if (err) *err = {RecordError::MissingField, field, 0};
      return std::nullopt;
    }
  }
  // ids may be strings or the raw numeric snowflake
  if (!j.contains("id") || !(j["id"].is_string() || j["id"].is_number_integer())) {
    if (err) *err = {RecordError::MissingField, "id", 0};
    return std::nullopt;
  }
  Tweet t;
  t.id = j["id"].is_string() ? j["id"].get<std::string>()
                             : std::to_string(j["id"].get<std::int64_t>());
  t.text = j["text"].get<std::string>();
  t.source = j["source"].get<std::string>();
  if (t.text.empty()) {
    if (err) *err = {RecordError::MissingField, "text", 0};
    return std::nullopt;
  }
  t.platform = sources.detect(t.source);
  return t;
}

PartitionResult partition_stream(std::istream& in, const SourceTable& sources,
                                 const IngestOptions& opts) {
  PartitionResult res;
  std::set<std::string> seen_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    ++res.total_records;
    RecordError err;
    auto tw = parse_tweet_record(line, sources, &err);
    if (!tw) {
      err.line_no = line_no;
      res.errors.push_back(err);
      ++res.dropped_malformed;
      continue;
    }
    if (tw->platform == Platform::Unknown) {
      ++res.dropped_unknown;
      continue;
    }
    if (opts.dedupe_by_id && !seen_ids.insert(tw->id).second) continue;
    auto& corpus = res.corpora[tw->platform];
    corpus.platform = tw->platform;
    corpus.tweets.push_back(std::move(*tw));
  }
  return res;
}

PartitionResult partition_file(const std::string& path, const SourceTable& sources,
                               const IngestOptions& opts) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open corpus: " + path);
  return partition_stream(in, sources, opts);
}

void write_corpus_jsonl(const PlatformCorpus& corpus, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::IoError, "cannot write corpus: " + path);
  for (const auto& t : corpus.tweets) {
    json j;
    j["id"] = t.id;
    j["text"] = t.text;
    j["source"] = t.source;
    out << j.dump() << '\n';
  }
}

PlatformCorpus read_corpus_jsonl(const std::string& path, Platform platform,
                                 const SourceTable& sources) {
  auto parts = partition_file(path, sources);
  auto it = parts.corpora.find(platform);
  if (it == parts.corpora.end())
    throw Error(Errc::EmptyCorpus,
                std::string("no ") + platform_name(platform) + " tweets in " + path);
  return std::move(it->second);
}

}  // namespace emojimap
