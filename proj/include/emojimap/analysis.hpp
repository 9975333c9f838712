#pragma once

// Jaccard neighbor-overlap matrix, bias-corrected per-emoji sentiment
// profiles with bootstrap CIs, and scale-of-misinterpretation statistics.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "emojimap/embedding.hpp"
#include "emojimap/mapping.hpp"
#include "emojimap/sentiment.hpp"
#include "emojimap/stats.hpp"

namespace emojimap {

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

struct OverlapMatrix {
  std::vector<std::string> labels;          // platform names plus e.g. "Random"
  std::vector<std::vector<double>> cells;   // symmetric, unit diagonal
};

// cell (p,q) = mean over shared emojis of the Jaccard coefficient between the
// two top-k neighbor word sets.
OverlapMatrix neighbor_overlap_matrix(
    const std::map<std::string, EmojiEmbeddingSet>& sets,
    const EmbeddingMatrix& words, int k = 1000);

// Mean emoji-stripped sentiment over all tweets of the platform.
double platform_bias(const std::vector<TokenSeq>& corpus, const Scorer& scorer);

struct SentimentProfile {
  std::string platform;
  std::string emoji;
  double mean_adjusted = 0.0;
  double variance = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t n = 0;  // tweets containing the emoji
};

struct ProfileOptions {
  int resamples = 100;
  bool exhaustive = false;  // enumerate all resamples instead of sampling
  double alpha = 0.05;
};

SentimentProfile emoji_sentiment_profile(const std::vector<TokenSeq>& corpus,
                                         const std::string& platform,
                                         const std::string& emoji,
                                         const Scorer& scorer, double bias,
                                         const ProfileOptions& opts, Rng& rng);

// All profiles for one platform (every emoji above min_occurrences), each
// bootstrap seeded from (master_seed, platform, emoji).
std::vector<SentimentProfile> platform_profiles(
    const std::vector<TokenSeq>& corpus, const std::string& platform,
    const Scorer& scorer, double bias, const ProfileOptions& opts,
    std::uint64_t master_seed, std::size_t min_occurrences = 1);

struct DivergenceOptions {
  bool use_welch = false;  // Welch t-test on raw scores instead of CI overlap
  double alpha = 0.05;
};

struct DivergenceReport {
  // emoji -> platform pairs where it is flagged divergent
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> flagged;
  double emoji_divergent_fraction = 0.0;
  double tweet_affected_fraction = 0.0;
  std::optional<double> global_sample_fraction;
};

// raw_scores (platform -> emoji -> per-tweet adjusted scores) is required
// only for the Welch alternative. background, when given, yields the
// fraction of background tweets containing a flagged emoji.
DivergenceReport divergence_report(
    const std::vector<SentimentProfile>& profiles,
    const std::map<std::string, std::vector<TokenSeq>>& corpora,
    const std::map<std::string, std::map<std::string, std::vector<double>>>*
        raw_scores = nullptr,
    const std::vector<TokenSeq>* background = nullptr,
    const DivergenceOptions& opts = {});

// Per-tweet adjusted (bias-subtracted) emoji-stripped scores, grouped by the
// emojis each tweet contains.
std::map<std::string, std::vector<double>> emoji_adjusted_scores(
    const std::vector<TokenSeq>& corpus, const Scorer& scorer, double bias);

}  // namespace emojimap
