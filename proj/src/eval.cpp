#include "emojimap/eval.hpp"

#include <algorithm>
#include <cmath>

#include "emojimap/error.hpp"
#include "emojimap/kernels.hpp"

namespace emojimap {

const char* repr_mode_name(ReprMode mode) {
  switch (mode) {
    case ReprMode::Mapping: return "mapping";
    case ReprMode::NoMapping: return "no_mapping";
    case ReprMode::NoEmojis: return "no_emojis";
  }
  return "?";
}

std::vector<LabeledTweet> label_tweets(const std::vector<TokenSeq>& corpus,
                                       Platform platform, const Scorer& scorer,
                                       double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0))
    throw Error(Errc::SpecInvalid, "threshold must be in (0, 1)");
  std::vector<LabeledTweet> out;
  for (const auto& seq : corpus) {
    const double s = scorer(strip_emojis(seq));
    if (std::fabs(s) < threshold) continue;  // strict interior deleted
    out.push_back({seq, platform, s >= 0.0 ? 1 : -1, s});
  }
  return out;
}

std::vector<float> represent(const LabeledTweet& tweet, const EmbeddingMatrix& words,
                             const std::map<Platform, EmojiEmbeddingSet>& emoji_sets,
                             const MappingTable* table, ReprMode mode,
                             Platform source, Platform target) {
  const int dim = words.dim;
  std::vector<float> repr(dim, 0.0f);
  std::size_t word_count = 0;
  for (const auto& tok : tweet.tokens) {
    if (tok.kind == TokenKind::Emoji) continue;
    if (auto idx = words.vocab.find(tok.surface)) {
      kern::axpy(1.0f, words.row(*idx), repr.data(), dim);
      ++word_count;
    }
  }
  if (word_count == 0)
    throw Error(Errc::NoKnownWords, "tweet has no in-vocabulary words");
  kern::scale(1.0f / word_count, repr.data(), dim);
  if (mode == ReprMode::NoEmojis) return repr;

  const TokenSeq* tokens = &tweet.tokens;
  TokenSeq mapped;
  Platform lookup;
  if (mode == ReprMode::Mapping) {
    if (tweet.platform == target) {
      if (!table) throw Error(Errc::SpecInvalid, "Mapping mode needs a table");
      mapped = apply_mapping(tweet.tokens, *table);
      tokens = &mapped;
    }
    lookup = source;
  } else {
    lookup = target;
  }

  auto set_it = emoji_sets.find(lookup);
  if (set_it == emoji_sets.end()) return repr;
  const auto& set = set_it->second;

  std::vector<float> emoji_term(dim, 0.0f);
  std::size_t emoji_count = 0;
  for (const auto& tok : *tokens) {
    if (tok.kind != TokenKind::Emoji) continue;
    auto vec_it = set.vectors.find(tok.surface);
    if (vec_it == set.vectors.end()) continue;
    kern::axpy(1.0f, vec_it->second.data(), emoji_term.data(), dim);
    ++emoji_count;
  }
  if (emoji_count > 0)
    kern::axpy(1.0f / emoji_count, emoji_term.data(), repr.data(), dim);
  return repr;
}

double LinearModel::decision(const std::vector<float>& x) const {
  return kern::dot(weights.data(), x.data(), x.size()) + bias;
}

LinearModel train_linear_classifier(const std::vector<std::vector<float>>& x,
                                    const std::vector<int>& y,
                                    const ClassifierConfig& config) {
  if (x.size() != y.size() || x.empty())
    throw Error(Errc::LengthMismatch, "feature/label size mismatch");
  bool has_pos = false, has_neg = false;
  for (int label : y) (label > 0 ? has_pos : has_neg) = true;
  if (!has_pos || !has_neg)
    throw Error(Errc::SingleClass, "training data has a single class");

  const std::size_t n = x.size();
  const int dim = static_cast<int>(x[0].size());
  const double lambda = 1.0 / (config.c * static_cast<double>(n));

  // pegasos on an augmented constant feature standing in for the bias
  std::vector<float> w(dim + 1, 0.0f);
  Rng rng(config.seed);
  std::vector<std::size_t> order(n);
  std::size_t t = 0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = n; i > 1; --i)
      std::swap(order[i - 1], order[rng.below(i)]);
    for (std::size_t oi : order) {
      ++t;
      const double lr = 1.0 / (lambda * static_cast<double>(t));
      const auto& xi = x[oi];
      const int yi = y[oi];
      const double margin =
          yi * (kern::dot(w.data(), xi.data(), dim) + w[dim]);
      kern::scale(static_cast<float>(1.0 - lr * lambda), w.data(), dim + 1);
      if (margin < 1.0) {
        kern::axpy(static_cast<float>(lr * yi), xi.data(), w.data(), dim);
        w[dim] += static_cast<float>(lr * yi);
      }
    }
  }
  LinearModel model;
  model.weights.assign(w.begin(), w.begin() + dim);
  model.bias = w[dim];
  return model;
}

Metrics compute_metrics(const std::vector<int>& predictions,
                        const std::vector<int>& labels) {
  if (predictions.size() != labels.size() || predictions.empty())
    throw Error(Errc::LengthMismatch, "predictions/labels size mismatch");
  std::size_t correct = 0, tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (predictions[i] == labels[i]) ++correct;
    if (predictions[i] > 0 && labels[i] > 0) ++tp;
    if (predictions[i] > 0 && labels[i] < 0) ++fp;
    if (predictions[i] < 0 && labels[i] > 0) ++fn;
  }
  Metrics m;
  m.accuracy = static_cast<double>(correct) / labels.size();
  if (tp == 0) {
    m.f1_positive = 0.0;  // P or R undefined or zero
  } else {
    const double p = static_cast<double>(tp) / (tp + fp);
    const double r = static_cast<double>(tp) / (tp + fn);
    m.f1_positive = 2.0 * p * r / (p + r);
  }
  return m;
}

std::vector<int> stratified_folds(const std::vector<int>& labels, int folds,
                                  std::uint64_t seed) {
  std::vector<std::size_t> pos, neg;
  for (std::size_t i = 0; i < labels.size(); ++i)
    (labels[i] > 0 ? pos : neg).push_back(i);
  if (static_cast<int>(pos.size()) < folds || static_cast<int>(neg.size()) < folds)
    throw Error(Errc::TooFewExamples, "each class needs >= folds examples");

  std::vector<int> assignment(labels.size(), 0);
  int cls = 0;
  for (auto* group : {&pos, &neg}) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(cls++)}));
    auto& idx = *group;
    for (std::size_t i = idx.size(); i > 1; --i)
      std::swap(idx[i - 1], idx[rng.below(i)]);
    for (std::size_t i = 0; i < idx.size(); ++i)
      assignment[idx[i]] = static_cast<int>(i % folds);
  }
  return assignment;
}

std::vector<FoldMetrics> cross_validate(const std::vector<std::vector<float>>& x,
                                        const std::vector<int>& y, int folds,
                                        std::uint64_t seed,
                                        const ClassifierConfig& config) {
  const auto assignment = stratified_folds(y, folds, seed);
  std::vector<FoldMetrics> out;
  for (int fold = 0; fold < folds; ++fold) {
    std::vector<std::vector<float>> train_x, test_x;
    std::vector<int> train_y, test_y;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (assignment[i] == fold) {
        test_x.push_back(x[i]);
        test_y.push_back(y[i]);
      } else {
        train_x.push_back(x[i]);
        train_y.push_back(y[i]);
      }
    }
    ClassifierConfig fold_cfg = config;
    fold_cfg.seed = derive_seed(seed, {hash64("fold"), static_cast<std::uint64_t>(fold)});
    const LinearModel model = train_linear_classifier(train_x, train_y, fold_cfg);
    std::vector<int> preds;
    preds.reserve(test_x.size());
    for (const auto& xi : test_x) preds.push_back(model.predict(xi));
    const Metrics m = compute_metrics(preds, test_y);
    out.push_back({fold, m.accuracy, m.f1_positive});
  }
  return out;
}

namespace {

double mean_accuracy(const std::vector<FoldMetrics>& folds) {
  double s = 0.0;
  for (const auto& f : folds) s += f.accuracy;
  return s / folds.size();
}

}  // namespace

ComparisonReport compare_pair(const EvalData& source, const EvalData& target,
                              double threshold, const EvalConfig& config) {
  if (!config.words || !config.emoji_sets || !config.table || !config.scorer)
    throw Error(Errc::SpecInvalid, "incomplete eval config");
  // anti-leakage: the mapping must come from a disjoint data partition
  if (!config.table->partition_tag.empty() &&
      (config.table->partition_tag == source.partition_tag ||
       config.table->partition_tag == target.partition_tag))
    throw Error(Errc::SpecInvalid,
                "mapping and evaluation data share partition tag '" +
                    config.table->partition_tag + "'");

  auto labeled = label_tweets(source.tokens, source.platform, config.scorer, threshold);
  auto labeled_target =
      label_tweets(target.tokens, target.platform, config.scorer, threshold);
  labeled.insert(labeled.end(), labeled_target.begin(), labeled_target.end());

  ComparisonReport report;
  report.source = source.platform;
  report.target = target.platform;
  report.threshold = threshold;

  // skip tweets with no in-vocabulary words once, so all modes see the
  // same example set
  std::vector<const LabeledTweet*> usable;
  for (const auto& tw : labeled) {
    bool known = false;
    for (const auto& tok : tw.tokens) {
      if (tok.kind == TokenKind::Emoji) continue;
      if (config.words->vocab.find(tok.surface)) {
        known = true;
        break;
      }
    }
    if (known)
      usable.push_back(&tw);
    else
      ++report.skipped_no_known_words;
  }
  report.labeled = usable.size();
  if (usable.empty()) throw Error(Errc::TooFewExamples, "no labeled tweets survive");

  std::vector<int> labels;
  labels.reserve(usable.size());
  for (const auto* tw : usable) labels.push_back(tw->label);

  for (ReprMode mode : {ReprMode::Mapping, ReprMode::NoMapping, ReprMode::NoEmojis}) {
    std::vector<std::vector<float>> x;
    x.reserve(usable.size());
    for (const auto* tw : usable)
      x.push_back(represent(*tw, *config.words, *config.emoji_sets, config.table,
                            mode, source.platform, target.platform));
    report.fold_metrics[mode] =
        cross_validate(x, labels, config.folds, config.seed, config.classifier);
  }

  report.a1 = mean_accuracy(report.fold_metrics[ReprMode::NoMapping]);
  report.a2 = mean_accuracy(report.fold_metrics[ReprMode::Mapping]);
  report.delta = report.a2 - report.a1;
  report.no_emoji_accuracy = mean_accuracy(report.fold_metrics[ReprMode::NoEmojis]);
  return report;
}

std::vector<SweepOutcome> threshold_sweep(const EvalData& source,
                                          const EvalData& target,
                                          const std::vector<double>& thresholds,
                                          const EvalConfig& config) {
  std::vector<SweepOutcome> out;
  for (double threshold : thresholds) {
    SweepOutcome outcome;
    outcome.threshold = threshold;
    try {
      EvalConfig cfg = config;
      cfg.seed = derive_seed(config.seed,
                             {hash64("threshold"),
                              static_cast<std::uint64_t>(std::llround(threshold * 1e6))});
      outcome.report = compare_pair(source, target, threshold, cfg);
      outcome.ok = true;
    } catch (const Error& e) {
      outcome.error = e.what();
    }
    out.push_back(std::move(outcome));
  }
  return out;
}

std::vector<double> default_threshold_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 9; ++i) grid.push_back(i / 10.0);
  return grid;
}

}  // namespace emojimap
