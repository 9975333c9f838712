#include "emojimap/synth.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "emojimap/error.hpp"
#include "emojimap/rng.hpp"
#include "emojimap/text.hpp"

namespace emojimap {

using nlohmann::json;

SynthSpec SynthSpec::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open synth spec: " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw Error(Errc::SpecInvalid, "synth spec is not valid JSON");

  SynthSpec spec;
  spec.seed = j.value("seed", 1ULL);
  for (const auto& name : j.at("platforms")) {
    auto p = platform_from_name(name.get<std::string>());
    if (!p || *p == Platform::Unknown)
      throw Error(Errc::SpecInvalid, "bad platform in synth spec");
    spec.platforms.push_back(*p);
  }
  spec.tweets_per_platform = j.at("tweets_per_platform").get<int>();
  if (j.contains("words_per_tweet")) {
    spec.min_words = j["words_per_tweet"][0].get<int>();
    spec.max_words = j["words_per_tweet"][1].get<int>();
  }
  spec.filler_words = j.value("filler_words", 200);
  spec.context_purity = j.value("context_purity", 1.0);
  for (const auto& e : j.at("emojis")) {
    SynthEmoji se;
    se.code = e.at("code").get<std::string>();
    se.polarity = e.value("polarity", 0.0);
    se.context_words = e.value("context_words", 0);
    spec.emojis.push_back(std::move(se));
  }
  if (j.contains("correspondence"))
    for (const auto& [k, v] : j["correspondence"].items())
      spec.correspondence[k] = v.get<std::string>();
  if (j.contains("sentiment")) {
    const auto& s = j["sentiment"];
    spec.sentiment.align_prob = s.value("align_prob", 0.75);
    if (s.contains("magnitudes"))
      spec.sentiment.magnitudes = s["magnitudes"].get<std::vector<double>>();
    spec.sentiment.words_per_magnitude = s.value("words_per_magnitude", 30);
    spec.sentiment.booster_pool = s.value("booster_pool", 2000);
    spec.sentiment.common_words = s.value("common_words", 2);
  }
  return spec;
}

namespace {

void validate(const SynthSpec& spec) {
  if (spec.platforms.empty() || spec.emojis.empty() ||
      spec.tweets_per_platform <= 0)
    throw Error(Errc::SpecInvalid, "platforms, emojis and tweet count required");
  if (spec.min_words < 3 || spec.max_words < spec.min_words)
    throw Error(Errc::SpecInvalid, "bad words_per_tweet range");
  std::set<Platform> seen(spec.platforms.begin(), spec.platforms.end());
  if (seen.size() != spec.platforms.size())
    throw Error(Errc::SpecInvalid, "duplicate platform");

  std::set<std::string> roster;
  for (const auto& e : spec.emojis) {
    parse_emoji_label(e.code);  // throws on malformed codes
    if (!roster.insert(e.code).second)
      throw Error(Errc::SpecInvalid, "duplicate emoji " + e.code);
    if (e.polarity < -1.0 || e.polarity > 1.0)
      throw Error(Errc::SpecInvalid, "polarity outside [-1, 1]");
  }
  for (const auto& [src, dst] : spec.correspondence) {
    if (!roster.count(src))
      throw Error(Errc::SpecInvalid, "correspondence references unknown emoji");
    parse_emoji_label(dst);
  }
  // the induced class -> code map must stay injective on every platform
  std::set<std::string> images;
  for (const auto& e : spec.emojis) {
    auto it = spec.correspondence.find(e.code);
    const std::string& image = it == spec.correspondence.end() ? e.code : it->second;
    if (!images.insert(image).second)
      throw Error(Errc::SpecInvalid, "correspondence is not a bijection");
  }
  for (const auto& m : spec.sentiment.magnitudes)
    if (m <= 0.0 || m > 1.0)
      throw Error(Errc::SpecInvalid, "magnitudes must lie in (0, 1]");
  if (spec.context_purity <= 0.0 || spec.context_purity > 1.0)
    throw Error(Errc::SpecInvalid, "context_purity must lie in (0, 1]");
}

const char* source_string(Platform p) {
  switch (p) {
    case Platform::Android: return "Twitter for Android";
    case Platform::iOS: return "Twitter for iPhone";
    case Platform::Twitter: return "Twitter Web Client";
    case Platform::Windows: return "Twitter for Windows";
    default: return "Unknown";
  }
}

}  // namespace

MappingTable invert_mapping(const MappingTable& table) {
  MappingTable inv;
  inv.source_platform = table.target_platform;
  inv.target_platform = table.source_platform;
  inv.partition_tag = table.partition_tag;
  for (const auto& e : table.entries)
    inv.entries.push_back({e.target_emoji, e.source_emoji, e.similarity});
  std::sort(inv.entries.begin(), inv.entries.end(),
            [](const MappingEntry& a, const MappingEntry& b) {
              return a.source_emoji < b.source_emoji;
            });
  for (const auto& e : inv.entries) inv.shared.push_back(e.source_emoji);
  return inv;
}

SynthOutput generate(const SynthSpec& spec, const std::string& partition_tag) {
  validate(spec);
  const auto& sent = spec.sentiment;
  const int n_emojis = static_cast<int>(spec.emojis.size());

  SynthOutput out;
  for (const auto& e : spec.emojis) out.inventory.add(parse_emoji_label(e.code));
  for (const auto& [src, dst] : spec.correspondence)
    out.inventory.add(parse_emoji_label(dst));

  // per-platform code for each roster class: base platform keeps the code,
  // the others use the correspondence image
  auto code_on = [&](int cls, std::size_t platform_idx) -> std::string {
    const std::string& base = spec.emojis[cls].code;
    if (platform_idx == 0) return base;
    auto it = spec.correspondence.find(base);
    return it == spec.correspondence.end() ? base : it->second;
  };

  // lexicon: common sentiment pools plus boosters
  const int n_mags = static_cast<int>(sent.magnitudes.size());
  bool any_sentiment = false;
  for (const auto& e : spec.emojis) any_sentiment |= e.polarity != 0.0;
  if (any_sentiment) {
    for (int m = 0; m < n_mags; ++m) {
      for (int w = 0; w < sent.words_per_magnitude; ++w) {
        out.lexicon.polarity["sp" + std::to_string(m) + "w" + std::to_string(w)] =
            sent.magnitudes[m];
        out.lexicon.polarity["sn" + std::to_string(m) + "w" + std::to_string(w)] =
            -sent.magnitudes[m];
      }
    }
    for (int k = 0; k < sent.booster_pool; ++k) {
      out.lexicon.polarity["bp" + std::to_string(k)] = 1.0;
      out.lexicon.polarity["bn" + std::to_string(k)] = -1.0;
    }
  }

  for (std::size_t pi = 0; pi < spec.platforms.size(); ++pi) {
    const Platform platform = spec.platforms[pi];
    Rng rng(derive_seed(spec.seed, {hash64(platform_name(platform)),
                                    hash64(partition_tag)}));
    PlatformCorpus corpus;
    corpus.platform = platform;
    for (int i = 0; i < spec.tweets_per_platform; ++i) {
      const int cls = static_cast<int>(rng.below(n_emojis));
      const SynthEmoji& emoji = spec.emojis[cls];
      const int length =
          spec.min_words + static_cast<int>(rng.below(spec.max_words - spec.min_words + 1));
      std::vector<std::string> words;

      if (emoji.polarity != 0.0) {
        const char sign = emoji.polarity > 0.0 ? 'p' : 'n';
        words.push_back(std::string("b") + sign +
                        std::to_string(rng.below(sent.booster_pool)));
        // at most one contrarian common word, so the planted label always
        // survives: worst score is (1.0 + min_mag - 1.0) / 3 >= 0.2
        bool flipped = false;
        for (int c = 0; c < sent.common_words; ++c) {
          bool match = flipped || rng.bernoulli(sent.align_prob);
          if (!match) flipped = true;
          const char s = (match ? sign : (sign == 'p' ? 'n' : 'p'));
          const int m = static_cast<int>(rng.below(n_mags));
          words.push_back(std::string("s") + s + std::to_string(m) + "w" +
                          std::to_string(rng.below(sent.words_per_magnitude)));
        }
      }

      int remaining = length - static_cast<int>(words.size());
      if (remaining < 0) remaining = 0;
      int ctx = emoji.context_words > 0 ? (remaining + 1) / 2 : 0;
      for (int c = 0; c < ctx; ++c) {
        int from = cls;
        if (n_emojis > 1 && !rng.bernoulli(spec.context_purity)) {
          from = static_cast<int>(rng.below(n_emojis - 1));
          if (from >= cls) ++from;
          if (spec.emojis[from].context_words == 0) from = cls;
        }
        words.push_back("c" + std::to_string(from) + "w" +
                        std::to_string(rng.below(spec.emojis[from].context_words)));
      }
      for (int f = 0; f < remaining - ctx; ++f)
        words.push_back("f" + std::to_string(rng.below(spec.filler_words)));

      for (std::size_t w = words.size(); w > 1; --w)
        std::swap(words[w - 1], words[rng.below(w)]);

      const std::size_t emoji_pos = rng.below(words.size() + 1);
      std::ostringstream text;
      for (std::size_t w = 0; w <= words.size(); ++w) {
        if (w) text << ' ';
        if (w == emoji_pos)
          text << utf8_encode(parse_emoji_label(code_on(cls, pi)));
        else
          text << words[w > emoji_pos ? w - 1 : w];
      }
      Tweet tw;
      tw.id = std::string(platform_name(platform)) + "-" + partition_tag + "-" +
              std::to_string(i);
      tw.text = text.str();
      tw.source = source_string(platform);
      tw.platform = platform;
      corpus.tweets.push_back(std::move(tw));
    }
    out.corpora.emplace(platform, std::move(corpus));
  }

  out.ground_truth.source_platform = spec.platforms[0];
  out.ground_truth.target_platform =
      spec.platforms.size() > 1 ? spec.platforms[1] : spec.platforms[0];
  out.ground_truth.partition_tag = partition_tag;
  for (int cls = 0; cls < n_emojis; ++cls) {
    out.ground_truth.entries.push_back(
        {code_on(cls, 0), code_on(cls, std::min<std::size_t>(1, spec.platforms.size() - 1)),
         1.0});
  }
  std::sort(out.ground_truth.entries.begin(), out.ground_truth.entries.end(),
            [](const MappingEntry& a, const MappingEntry& b) {
              return a.source_emoji < b.source_emoji;
            });
  for (const auto& e : out.ground_truth.entries)
    out.ground_truth.shared.push_back(e.source_emoji);
  return out;
}

}  // namespace emojimap
