#pragma once

// Synthetic corpus generator with planted emoji correspondences and
// sentiment structure; the desk-scale oracle for the whole pipeline.

#include <map>
#include <string>
#include <vector>

#include "emojimap/corpus.hpp"
#include "emojimap/mapping.hpp"
#include "emojimap/sentiment.hpp"

namespace emojimap {

struct SynthEmoji {
  std::string code;        // "U+XXXX" label
  double polarity = 0.0;   // 0 = no planted sentiment
  int context_words = 0;   // size of this emoji's private context pool
};

struct SynthSentiment {
  double align_prob = 0.75;             // P(common word matches the label)
  std::vector<double> magnitudes = {0.7, 0.9, 1.0};
  int words_per_magnitude = 30;
  int booster_pool = 2000;              // rare full-strength words, kept OOV
  int common_words = 2;                 // common sentiment words per tweet
};

struct SynthSpec {
  std::uint64_t seed = 1;
  std::vector<Platform> platforms;
  int tweets_per_platform = 0;
  int min_words = 6, max_words = 14;
  int filler_words = 200;
  // probability a context word comes from the tweet's own emoji class;
  // the rest are drawn from a random other class's pool
  double context_purity = 1.0;
  std::vector<SynthEmoji> emojis;
  // base-platform code -> code used on every other platform; must be a
  // bijection on the roster. Empty pairs default to identity.
  std::map<std::string, std::string> correspondence;
  SynthSentiment sentiment;

  static SynthSpec from_json_file(const std::string& path);
};

struct SynthOutput {
  std::map<Platform, PlatformCorpus> corpora;
  MappingTable ground_truth;  // platforms[0] -> platforms[1]
  Lexicon lexicon;
  EmojiInventory inventory;
};

// Deterministic given (spec.seed, partition_tag). Every tweet contains
// exactly one roster emoji.
SynthOutput generate(const SynthSpec& spec, const std::string& partition_tag = "");

// Swaps direction of a bijective mapping table.
MappingTable invert_mapping(const MappingTable& table);

}  // namespace emojimap
