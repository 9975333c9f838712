#include "emojimap/analysis.hpp"

#include <algorithm>

#include "emojimap/error.hpp"

namespace emojimap {

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty())
    throw Error(Errc::BothEmpty, "jaccard of two empty sets");
  std::size_t inter = 0;
  for (const auto& x : a) inter += b.count(x);
  const std::size_t uni = a.size() + b.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

OverlapMatrix neighbor_overlap_matrix(
    const std::map<std::string, EmojiEmbeddingSet>& sets,
    const EmbeddingMatrix& words, int k) {
  if (sets.size() < 2)
    throw Error(Errc::SpecInvalid, "need at least two platforms");

  OverlapMatrix m;
  for (const auto& [label, set] : sets) m.labels.push_back(label);
  const std::size_t p = m.labels.size();

  // top-k neighbor word sets, computed once per (platform, emoji)
  std::map<std::string, std::map<std::string, std::set<std::string>>> neighbors;
  for (const auto& [label, set] : sets) {
    for (const auto& [emoji, vec] : set.vectors) {
      std::set<std::string> top;
      for (const auto& rw : nearest_words(vec, words, k)) top.insert(rw.word);
      neighbors[label].emplace(emoji, std::move(top));
    }
  }

  m.cells.assign(p, std::vector<double>(p, 1.0));
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i + 1; j < p; ++j) {
      const auto& a = neighbors[m.labels[i]];
      const auto& b = neighbors[m.labels[j]];
      double sum = 0.0;
      std::size_t shared = 0;
      for (const auto& [emoji, top_a] : a) {
        auto it = b.find(emoji);
        if (it == b.end()) continue;
        sum += jaccard(top_a, it->second);
        ++shared;
      }
      const double cell = shared ? sum / shared : 0.0;
      m.cells[i][j] = cell;
      m.cells[j][i] = cell;
    }
  }
  return m;
}

double platform_bias(const std::vector<TokenSeq>& corpus, const Scorer& scorer) {
  if (corpus.empty()) throw Error(Errc::EmptyCorpus, "bias of empty corpus");
  double sum = 0.0;
  for (const auto& seq : corpus) sum += scorer(strip_emojis(seq));
  return sum / corpus.size();
}

namespace {

std::set<std::string> emoji_labels_of(const TokenSeq& seq) {
  std::set<std::string> out;
  for (const auto& t : seq)
    if (t.kind == TokenKind::Emoji) out.insert(t.surface);
  return out;
}

}  // namespace

std::map<std::string, std::vector<double>> emoji_adjusted_scores(
    const std::vector<TokenSeq>& corpus, const Scorer& scorer, double bias) {
  std::map<std::string, std::vector<double>> out;
  for (const auto& seq : corpus) {
    const auto labels = emoji_labels_of(seq);
    if (labels.empty()) continue;
    const double adjusted = scorer(strip_emojis(seq)) - bias;
    for (const auto& label : labels) out[label].push_back(adjusted);
  }
  return out;
}

SentimentProfile emoji_sentiment_profile(const std::vector<TokenSeq>& corpus,
                                         const std::string& platform,
                                         const std::string& emoji,
                                         const Scorer& scorer, double bias,
                                         const ProfileOptions& opts, Rng& rng) {
  std::vector<double> adjusted;
  for (const auto& seq : corpus) {
    if (!emoji_labels_of(seq).count(emoji)) continue;
    adjusted.push_back(scorer(strip_emojis(seq)) - bias);
  }
  if (adjusted.empty())
    throw Error(Errc::EmojiAbsent, emoji + " does not occur in the corpus");

  const BootstrapResult boot =
      opts.exhaustive ? bootstrap_mean_exhaustive(adjusted, opts.alpha)
                      : bootstrap_mean(adjusted, opts.resamples, rng, opts.alpha);
  SentimentProfile prof;
  prof.platform = platform;
  prof.emoji = emoji;
  prof.mean_adjusted = boot.mean;
  prof.variance = boot.variance;
  prof.ci_low = boot.ci_low;
  prof.ci_high = boot.ci_high;
  prof.n = adjusted.size();
  return prof;
}

std::vector<SentimentProfile> platform_profiles(
    const std::vector<TokenSeq>& corpus, const std::string& platform,
    const Scorer& scorer, double bias, const ProfileOptions& opts,
    std::uint64_t master_seed, std::size_t min_occurrences) {
  std::map<std::string, std::size_t> counts;
  for (const auto& seq : corpus)
    for (const auto& label : emoji_labels_of(seq)) ++counts[label];

  std::vector<SentimentProfile> out;
  for (const auto& [label, count] : counts) {
    if (count < min_occurrences) continue;
    Rng rng(derive_seed(master_seed, {hash64(platform), hash64(label)}));
    out.push_back(emoji_sentiment_profile(corpus, platform, label, scorer, bias,
                                          opts, rng));
  }
  return out;
}

DivergenceReport divergence_report(
    const std::vector<SentimentProfile>& profiles,
    const std::map<std::string, std::vector<TokenSeq>>& corpora,
    const std::map<std::string, std::map<std::string, std::vector<double>>>*
        raw_scores,
    const std::vector<TokenSeq>* background, const DivergenceOptions& opts) {
  std::set<std::string> platforms;
  for (const auto& p : profiles) platforms.insert(p.platform);
  if (platforms.size() < 2)
    throw Error(Errc::SpecInvalid, "need profiles from at least two platforms");

  std::map<std::pair<std::string, std::string>, const SentimentProfile*> by_key;
  std::set<std::string> emojis;
  for (const auto& p : profiles) {
    by_key[{p.platform, p.emoji}] = &p;
    emojis.insert(p.emoji);
  }

  DivergenceReport report;
  std::vector<std::string> plist(platforms.begin(), platforms.end());
  for (const auto& emoji : emojis) {
    for (std::size_t i = 0; i < plist.size(); ++i) {
      for (std::size_t j = i + 1; j < plist.size(); ++j) {
        auto a = by_key.find({plist[i], emoji});
        auto b = by_key.find({plist[j], emoji});
        if (a == by_key.end() || b == by_key.end()) continue;
        bool divergent;
        if (opts.use_welch) {
          if (!raw_scores)
            throw Error(Errc::SpecInvalid, "Welch mode needs raw scores");
          const auto& sa = raw_scores->at(plist[i]).at(emoji);
          const auto& sb = raw_scores->at(plist[j]).at(emoji);
          divergent = welch_t_test(sa, sb).p_value < opts.alpha;
        } else {
          // disjoint 95% bootstrap CIs
          divergent = a->second->ci_high < b->second->ci_low ||
                      b->second->ci_high < a->second->ci_low;
        }
        if (divergent) report.flagged[emoji].emplace_back(plist[i], plist[j]);
      }
    }
  }

  report.emoji_divergent_fraction =
      emojis.empty() ? 0.0
                     : static_cast<double>(report.flagged.size()) / emojis.size();

  std::size_t total = 0, affected = 0;
  for (const auto& [platform, corpus] : corpora) {
    for (const auto& seq : corpus) {
      ++total;
      for (const auto& label : emoji_labels_of(seq)) {
        if (report.flagged.count(label)) {
          ++affected;
          break;
        }
      }
    }
  }
  report.tweet_affected_fraction =
      total ? static_cast<double>(affected) / total : 0.0;

  if (background) {
    std::size_t bg_affected = 0;
    for (const auto& seq : *background)
      for (const auto& label : emoji_labels_of(seq))
        if (report.flagged.count(label)) {
          ++bg_affected;
          break;
        }
    report.global_sample_fraction =
        background->empty()
            ? 0.0
            : static_cast<double>(bg_affected) / background->size();
  }
  return report;
}

}  // namespace emojimap
