#pragma once

// Sentiment-classification harness: binary labeling with ambiguity deletion,
// the three tweet representations, 5-fold CV with a linear classifier, the
// threshold sweep, and significance testing.

#include <map>
#include <string>
#include <vector>

#include "emojimap/embedding.hpp"
#include "emojimap/mapping.hpp"
#include "emojimap/sentiment.hpp"
#include "emojimap/stats.hpp"

namespace emojimap {

struct LabeledTweet {
  TokenSeq tokens;  // with emojis
  Platform platform = Platform::Unknown;
  int label = 0;  // +1 / -1
  double raw_score = 0.0;
};

enum class ReprMode { Mapping, NoMapping, NoEmojis };
const char* repr_mode_name(ReprMode mode);

// Tweets whose emoji-stripped score falls strictly inside
// (-threshold, +threshold) are deleted; survivors get sign labels.
std::vector<LabeledTweet> label_tweets(const std::vector<TokenSeq>& corpus,
                                       Platform platform, const Scorer& scorer,
                                       double threshold);

// Word-average plus emoji-average representation.
//  - NoEmojis: word term only.
//  - NoMapping: every tweet's emojis are looked up in the target platform's
//    embedding (the shared-vocabulary baseline).
//  - Mapping: target-platform tweets have the (target -> source) table
//    applied first; emojis are then looked up in the source platform's
//    embedding.
// Throws NoKnownWords when no token is in the vocabulary.
std::vector<float> represent(const LabeledTweet& tweet, const EmbeddingMatrix& words,
                             const std::map<Platform, EmojiEmbeddingSet>& emoji_sets,
                             const MappingTable* table, ReprMode mode,
                             Platform source, Platform target);

struct ClassifierConfig {
  double c = 1.0;  // inverse regularization strength
  int epochs = 20;
  std::uint64_t seed = 7;
};

struct LinearModel {
  std::vector<float> weights;
  float bias = 0.0f;

  double decision(const std::vector<float>& x) const;
  int predict(const std::vector<float>& x) const {
    return decision(x) >= 0.0 ? 1 : -1;
  }
};

// Hinge-loss stochastic subgradient descent with L2 regularization,
// deterministic given the seed.
LinearModel train_linear_classifier(const std::vector<std::vector<float>>& x,
                                    const std::vector<int>& y,
                                    const ClassifierConfig& config);

struct FoldMetrics {
  int fold = 0;
  double accuracy = 0.0;
  double f1_positive = 0.0;
};

struct Metrics {
  double accuracy = 0.0;
  double f1_positive = 0.0;
};

Metrics compute_metrics(const std::vector<int>& predictions,
                        const std::vector<int>& labels);

// Stratified, seeded fold assignment (fold index per example).
std::vector<int> stratified_folds(const std::vector<int>& labels, int folds,
                                  std::uint64_t seed);

std::vector<FoldMetrics> cross_validate(const std::vector<std::vector<float>>& x,
                                        const std::vector<int>& y, int folds,
                                        std::uint64_t seed,
                                        const ClassifierConfig& config);

struct EvalData {
  std::vector<TokenSeq> tokens;
  Platform platform = Platform::Unknown;
  std::string partition_tag;  // must differ from the mapping's tag
};

struct EvalConfig {
  const EmbeddingMatrix* words = nullptr;
  const std::map<Platform, EmojiEmbeddingSet>* emoji_sets = nullptr;
  const MappingTable* table = nullptr;  // direction: target -> source
  Scorer scorer;
  int folds = 5;
  std::uint64_t seed = 1;
  ClassifierConfig classifier;
};

struct ComparisonReport {
  Platform source = Platform::Unknown;
  Platform target = Platform::Unknown;
  double threshold = 0.0;
  std::map<ReprMode, std::vector<FoldMetrics>> fold_metrics;
  double a1 = 0.0;  // mean accuracy, NoMapping
  double a2 = 0.0;  // mean accuracy, Mapping
  double delta = 0.0;
  double no_emoji_accuracy = 0.0;
  std::size_t labeled = 0;
  std::size_t skipped_no_known_words = 0;
};

ComparisonReport compare_pair(const EvalData& source, const EvalData& target,
                              double threshold, const EvalConfig& config);

struct SweepOutcome {
  double threshold = 0.0;
  bool ok = false;
  ComparisonReport report;  // valid when ok
  std::string error;        // set when !ok
};

std::vector<SweepOutcome> threshold_sweep(const EvalData& source,
                                          const EvalData& target,
                                          const std::vector<double>& thresholds,
                                          const EvalConfig& config);

// The harness significance test is the Welch two-sample t-test
// (welch_t_test in stats.hpp); re-exported here under the harness name.
inline TTestResult t_test(const std::vector<double>& a, const std::vector<double>& b) {
  return welch_t_test(a, b);
}

std::vector<double> default_threshold_grid();  // 0.1 .. 0.9

}  // namespace emojimap
