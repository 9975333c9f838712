#pragma once

// Shared skip-gram word embedding plus per-platform emoji vectors trained
// against the frozen word matrix.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "emojimap/corpus.hpp"
#include "emojimap/rng.hpp"
#include "emojimap/text.hpp"

namespace emojimap {

struct Vocab {
  std::vector<std::string> words;                 // index -> word
  std::vector<std::int64_t> counts;               // index -> frequency
  std::unordered_map<std::string, int> index;     // word -> index

  std::size_t size() const { return words.size(); }
  std::optional<int> find(const std::string& word) const {
    auto it = index.find(word);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

// Indices ordered by descending frequency, ties broken lexicographically.
Vocab build_vocab(const std::vector<TokenSeq>& corpus, int min_count);

struct EmbeddingMatrix {
  Vocab vocab;
  int dim = 0;
  std::vector<float> data;  // N x dim, row major

  float* row(int i) { return data.data() + static_cast<std::size_t>(i) * dim; }
  const float* row(int i) const {
    return data.data() + static_cast<std::size_t>(i) * dim;
  }
};

struct TrainConfig {
  int dim = 20;
  int window = 5;
  int negatives = 5;
  int epochs = 5;
  float initial_lr = 0.025f;
  float final_lr = 0.0001f;
  int min_count = 5;
  int emoji_min_count = 50;
  std::uint64_t seed = 1;
  bool deterministic = true;
  int workers = 1;
  // Exact mode: the negative term sums over the whole vocabulary instead of
  // sampling. Only sensible for small vocabularies; used by oracle tests.
  bool full_vocab_negatives = false;
  // 0 disables frequent-word subsampling.
  double subsample_threshold = 0.0;
};

// Streams index-mapped sentences; Emoji tokens must not be present.
EmbeddingMatrix train_word_embedding(const std::vector<TokenSeq>& union_corpus,
                                     const TrainConfig& config);

struct ContextPair {
  std::string emoji;  // codepoint label
  int word = 0;       // vocab index

  bool operator==(const ContextPair&) const = default;
};

std::vector<ContextPair> extract_context_pairs(const std::vector<TokenSeq>& corpus,
                                               const Vocab& vocab, int window);

// log sigma(w_j . e) + sum_k log sigma(-w_k . e)
double sgns_objective(const std::vector<double>& e, const std::vector<double>& positive,
                      const std::vector<std::vector<double>>& negatives);

// Ascent gradient of sgns_objective with respect to e (W frozen):
// (1 - sigma(w_j . e)) w_j - sum_k sigma(w_k . e) w_k
std::vector<double> sgns_gradient(const std::vector<double>& e,
                                  const std::vector<double>& positive,
                                  const std::vector<std::vector<double>>& negatives);

double log_sigmoid(double x);
double sigmoid(double x);

// Draws from unigram^power (default 0.75), renormalized. Walker alias table.
class NegativeSampler {
 public:
  explicit NegativeSampler(const Vocab& vocab, double power = 0.75);
  int sample(Rng& rng) const;

 private:
  std::vector<double> prob_;
  std::vector<int> alias_;
};

std::vector<int> negative_sample(const Vocab& vocab, int n, Rng& rng);

struct EmojiEmbeddingSet {
  Platform platform = Platform::Unknown;
  int dim = 0;
  std::map<std::string, std::vector<float>> vectors;  // label -> K-vector
  std::map<std::string, std::int64_t> counts;         // label -> occurrences
};

EmojiEmbeddingSet train_emoji_vectors(Platform platform,
                                      const std::vector<TokenSeq>& corpus,
                                      const EmbeddingMatrix& frozen_words,
                                      const TrainConfig& config);

// Text format: header "N K", one "token v1 .. vK" line per row. Emoji files
// carry a "#platform: <name>" tag line first.
void save_embedding(const EmbeddingMatrix& matrix, const std::string& path);
EmbeddingMatrix load_embedding(const std::string& path);
void save_emoji_set(const EmojiEmbeddingSet& set, const std::string& path);
EmojiEmbeddingSet load_emoji_set(const std::string& path);

// Convenience: tokenize every tweet of a corpus.
std::vector<TokenSeq> tokenize_corpus(const PlatformCorpus& corpus,
                                      const TokenizeConfig& config,
                                      const EmojiInventory& inventory);
std::vector<TokenSeq> strip_corpus(const std::vector<TokenSeq>& corpus);

}  // namespace emojimap
