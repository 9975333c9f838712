#include "emojimap/embedding.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "emojimap/error.hpp"
#include "emojimap/kernels.hpp"

namespace emojimap {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double log_sigmoid(double x) {
  // overflow-safe branches
  if (x >= 0.0) return -std::log1p(std::exp(-x));
  return x - std::log1p(std::exp(x));
}

Vocab build_vocab(const std::vector<TokenSeq>& corpus, int min_count) {
  if (min_count < 1) throw Error(Errc::SpecInvalid, "min_count must be >= 1");
  std::unordered_map<std::string, std::int64_t> counts;
  for (const auto& seq : corpus)
    for (const auto& tok : seq)
      if (tok.kind != TokenKind::Emoji) ++counts[tok.surface];

  std::vector<std::pair<std::string, std::int64_t>> kept;
  for (auto& [word, count] : counts)
    if (count >= min_count) kept.emplace_back(word, count);
  if (kept.empty()) throw Error(Errc::EmptyVocab, "no words survive min_count");

  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  Vocab vocab;
  vocab.words.reserve(kept.size());
  vocab.counts.reserve(kept.size());
  for (int i = 0; i < static_cast<int>(kept.size()); ++i) {
    vocab.words.push_back(kept[i].first);
    vocab.counts.push_back(kept[i].second);
    vocab.index.emplace(kept[i].first, i);
  }
  return vocab;
}

NegativeSampler::NegativeSampler(const Vocab& vocab, double power) {
  const std::size_t n = vocab.size();
  std::vector<double> weights(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    weights[i] = std::pow(static_cast<double>(vocab.counts[i]), power);
    total += weights[i];
  }
  // Walker alias method
  prob_.assign(n, 0.0);
  alias_.assign(n, 0);
  std::vector<int> small, large;
  std::vector<double> scaled(n);
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = weights[i] / total * n;
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<int>(i));
  }
  while (!small.empty() && !large.empty()) {
    int s = small.back(); small.pop_back();
    int l = large.back(); large.pop_back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    (scaled[l] < 1.0 ? small : large).push_back(l);
  }
  for (int i : large) prob_[i] = 1.0;
  for (int i : small) prob_[i] = 1.0;
}

int NegativeSampler::sample(Rng& rng) const {
  const std::size_t i = rng.below(prob_.size());
  return rng.uniform() < prob_[i] ? static_cast<int>(i) : alias_[i];
}

std::vector<int> negative_sample(const Vocab& vocab, int n, Rng& rng) {
  if (n < 1) throw Error(Errc::SpecInvalid, "n must be >= 1");
  NegativeSampler sampler(vocab);
  std::vector<int> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(sampler.sample(rng));
  return out;
}

double sgns_objective(const std::vector<double>& e, const std::vector<double>& positive,
                      const std::vector<std::vector<double>>& negatives) {
  auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
  };
  double obj = log_sigmoid(dot(positive, e));
  for (const auto& neg : negatives) obj += log_sigmoid(-dot(neg, e));
  return obj;
}

std::vector<double> sgns_gradient(const std::vector<double>& e,
                                  const std::vector<double>& positive,
                                  const std::vector<std::vector<double>>& negatives) {
  auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
  };
  std::vector<double> grad(e.size(), 0.0);
  const double gp = 1.0 - sigmoid(dot(positive, e));
  for (std::size_t i = 0; i < e.size(); ++i) grad[i] += gp * positive[i];
  for (const auto& neg : negatives) {
    const double gn = sigmoid(dot(neg, e));
    for (std::size_t i = 0; i < e.size(); ++i) grad[i] -= gn * neg[i];
  }
  return grad;
}

std::vector<ContextPair> extract_context_pairs(const std::vector<TokenSeq>& corpus,
                                               const Vocab& vocab, int window) {
  if (window < 1) throw Error(Errc::SpecInvalid, "window must be >= 1");
  std::vector<ContextPair> pairs;
  for (const auto& seq : corpus) {
    const int n = static_cast<int>(seq.size());
    for (int i = 0; i < n; ++i) {
      if (seq[i].kind != TokenKind::Emoji) continue;
      const int lo = std::max(0, i - window);
      const int hi = std::min(n - 1, i + window);
      for (int j = lo; j <= hi; ++j) {
        if (j == i || seq[j].kind != TokenKind::Word) continue;
        if (auto idx = vocab.find(seq[j].surface))
          pairs.push_back({seq[i].surface, *idx});
      }
    }
  }
  return pairs;
}

namespace {

// One (input, output) SGNS update; in/out are K-vectors, acc collects the
// input-side gradient so callers can batch it across the window.
inline void sgns_update(float* in_grad_acc, const float* in, float* out,
                        double label, float lr, int dim) {
  const double f = kern::dot(in, out, dim);
  const float g = static_cast<float>((label - sigmoid(f)) * lr);
  kern::axpy(g, out, in_grad_acc, dim);
  kern::axpy(g, in, out, dim);
}

struct WordTrainShared {
  const std::vector<std::vector<int>>* sentences;
  const NegativeSampler* sampler;
  const std::vector<double>* keep_prob;  // empty when subsampling is off
  std::vector<float>* syn0;
  std::vector<float>* syn1;
  const TrainConfig* cfg;
  std::size_t total_tokens;
  std::atomic<std::size_t> processed{0};
};

void word_train_range(WordTrainShared& sh, std::size_t begin, std::size_t end,
                      std::uint64_t seed) {
  Rng rng(seed);
  const auto& cfg = *sh.cfg;
  const int dim = cfg.dim;
  const std::size_t total_updates =
      std::max<std::size_t>(1, sh.total_tokens * cfg.epochs);
  std::vector<float> acc(dim);
  std::vector<int> sent;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (std::size_t s = begin; s < end; ++s) {
      const auto& full = (*sh.sentences)[s];
      sent.clear();
      for (int w : full) {
        if (!sh.keep_prob->empty() && rng.uniform() >= (*sh.keep_prob)[w]) continue;
        sent.push_back(w);
      }
      const int n = static_cast<int>(sent.size());
      for (int t = 0; t < n; ++t) {
        const std::size_t done = sh.processed.fetch_add(1, std::memory_order_relaxed);
        const double frac = std::min(1.0, static_cast<double>(done) / total_updates);
        const float lr = static_cast<float>(
            cfg.initial_lr + (cfg.final_lr - cfg.initial_lr) * frac);
        const int center = sent[t];
        float* v_in = sh.syn0->data() + static_cast<std::size_t>(center) * dim;
        const int lo = std::max(0, t - cfg.window);
        const int hi = std::min(n - 1, t + cfg.window);
        for (int c = lo; c <= hi; ++c) {
          if (c == t) continue;
          const int context = sent[c];
          std::fill(acc.begin(), acc.end(), 0.0f);
          float* v_out = sh.syn1->data() + static_cast<std::size_t>(context) * dim;
          sgns_update(acc.data(), v_in, v_out, 1.0, lr, dim);
          for (int k = 0; k < cfg.negatives; ++k) {
            int neg = sh.sampler->sample(rng);
            if (neg == context) continue;
            float* v_neg = sh.syn1->data() + static_cast<std::size_t>(neg) * dim;
            sgns_update(acc.data(), v_in, v_neg, 0.0, lr, dim);
          }
          kern::axpy(1.0f, acc.data(), v_in, dim);
        }
      }
    }
  }
}

}  // namespace

EmbeddingMatrix train_word_embedding(const std::vector<TokenSeq>& union_corpus,
                                     const TrainConfig& config) {
  for (const auto& seq : union_corpus)
    for (const auto& tok : seq)
      if (tok.kind == TokenKind::Emoji)
        throw Error(Errc::SpecInvalid, "word corpus must be emoji-stripped");

  EmbeddingMatrix matrix;
  matrix.vocab = build_vocab(union_corpus, config.min_count);
  matrix.dim = config.dim;
  const std::size_t n = matrix.vocab.size();
  const int dim = config.dim;

  std::vector<std::vector<int>> sentences;
  sentences.reserve(union_corpus.size());
  std::size_t total_tokens = 0;
  for (const auto& seq : union_corpus) {
    std::vector<int> sent;
    for (const auto& tok : seq)
      if (auto idx = matrix.vocab.find(tok.surface)) sent.push_back(*idx);
    total_tokens += sent.size();
    sentences.push_back(std::move(sent));
  }

  matrix.data.resize(n * dim);
  Rng init_rng(derive_seed(config.seed, {hash64("syn0")}));
  const double half = 0.5 / dim;
  for (auto& v : matrix.data) v = static_cast<float>(init_rng.uniform(-half, half));
  std::vector<float> syn1(n * dim, 0.0f);

  std::vector<double> keep_prob;
  if (config.subsample_threshold > 0.0) {
    keep_prob.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double f = static_cast<double>(matrix.vocab.counts[i]) /
                       std::max<std::size_t>(1, total_tokens);
      const double r = std::sqrt(config.subsample_threshold / f) +
                       config.subsample_threshold / f;
      keep_prob[i] = std::min(1.0, r);
    }
  }

  NegativeSampler sampler(matrix.vocab);
  WordTrainShared shared{&sentences, &sampler, &keep_prob,
                         &matrix.data, &syn1, &config, total_tokens};

  const int workers = (config.deterministic || config.workers <= 1)
                          ? 1
                          : config.workers;
  if (workers == 1) {
    word_train_range(shared, 0, sentences.size(),
                     derive_seed(config.seed, {hash64("train"), 0}));
  } else {
    // hogwild: unsynchronized lossy updates, nondeterministic by contract
    std::vector<std::thread> threads;
    const std::size_t per = (sentences.size() + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(sentences.size(), w * per);
      const std::size_t end = std::min(sentences.size(), begin + per);
      threads.emplace_back([&shared, begin, end, w, &config] {
        word_train_range(shared, begin, end,
                         derive_seed(config.seed, {hash64("train"),
                                                   static_cast<std::uint64_t>(w)}));
      });
    }
    for (auto& t : threads) t.join();
  }
  return matrix;
}

EmojiEmbeddingSet train_emoji_vectors(Platform platform,
                                      const std::vector<TokenSeq>& corpus,
                                      const EmbeddingMatrix& frozen_words,
                                      const TrainConfig& config) {
  const int dim = frozen_words.dim;
  std::map<std::string, std::int64_t> counts;
  for (const auto& seq : corpus)
    for (const auto& tok : seq)
      if (tok.kind == TokenKind::Emoji) ++counts[tok.surface];

  EmojiEmbeddingSet set;
  set.platform = platform;
  set.dim = dim;
  for (const auto& [label, count] : counts)
    if (count >= config.emoji_min_count) set.counts[label] = count;
  if (set.counts.empty())
    throw Error(Errc::NoEmojis, "no emoji reaches emoji_min_count");

  auto all_pairs = extract_context_pairs(corpus, frozen_words.vocab, config.window);
  std::vector<ContextPair> pairs;
  pairs.reserve(all_pairs.size());
  for (auto& p : all_pairs)
    if (set.counts.count(p.emoji)) pairs.push_back(std::move(p));

  for (const auto& [label, count] : set.counts) {
    Rng rng(derive_seed(config.seed,
                        {hash64(platform_name(platform)), hash64(label)}));
    std::vector<float> vec(dim);
    const double half = 0.5 / dim;
    for (auto& v : vec) v = static_cast<float>(rng.uniform(-half, half));
    set.vectors.emplace(label, std::move(vec));
  }
  if (pairs.empty()) return set;  // vectors stay at initialization

  NegativeSampler sampler(frozen_words.vocab);
  Rng rng(derive_seed(config.seed, {hash64(platform_name(platform)),
                                    hash64("emoji-train")}));
  const std::size_t total_updates =
      std::max<std::size_t>(1, pairs.size() * config.epochs);
  std::size_t done = 0;
  std::vector<std::size_t> order(pairs.size());
  const std::size_t vocab_n = frozen_words.vocab.size();

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (std::size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[rng.below(i)]);
    for (std::size_t oi : order) {
      const auto& pair = pairs[oi];
      const double frac = std::min(1.0, static_cast<double>(done++) / total_updates);
      const float lr = static_cast<float>(
          config.initial_lr + (config.final_lr - config.initial_lr) * frac);
      float* e = set.vectors.at(pair.emoji).data();
      const float* w_pos = frozen_words.row(pair.word);
      const double gp = (1.0 - sigmoid(kern::dot(w_pos, e, dim))) * lr;
      kern::axpy(static_cast<float>(gp), w_pos, e, dim);
      if (config.full_vocab_negatives) {
        for (std::size_t k = 0; k < vocab_n; ++k) {
          const float* w_neg = frozen_words.row(static_cast<int>(k));
          const double gn = sigmoid(kern::dot(w_neg, e, dim)) * lr;
          kern::axpy(static_cast<float>(-gn), w_neg, e, dim);
        }
      } else {
        for (int k = 0; k < config.negatives; ++k) {
          const int neg = sampler.sample(rng);
          if (neg == pair.word) continue;
          const float* w_neg = frozen_words.row(neg);
          const double gn = sigmoid(kern::dot(w_neg, e, dim)) * lr;
          kern::axpy(static_cast<float>(-gn), w_neg, e, dim);
        }
      }
    }
  }
  return set;
}

namespace {

std::string fmt_float(float v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

void save_embedding(const EmbeddingMatrix& matrix, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::IoError, "cannot write embedding: " + path);
  out << matrix.vocab.size() << ' ' << matrix.dim << '\n';
  for (std::size_t i = 0; i < matrix.vocab.size(); ++i) {
    out << matrix.vocab.words[i];
    const float* row = matrix.row(static_cast<int>(i));
    for (int k = 0; k < matrix.dim; ++k) out << ' ' << fmt_float(row[k]);
    out << '\n';
  }
}

EmbeddingMatrix load_embedding(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open embedding: " + path);
  std::size_t n;
  int dim;
  if (!(in >> n >> dim) || dim <= 0)
    throw Error(Errc::ParseError, path + ": bad header");
  EmbeddingMatrix matrix;
  matrix.dim = dim;
  matrix.data.resize(n * dim);
  for (std::size_t i = 0; i < n; ++i) {
    std::string token;
    if (!(in >> token))
      throw Error(Errc::ParseError, path + ": truncated at row " + std::to_string(i));
    matrix.vocab.words.push_back(token);
    matrix.vocab.counts.push_back(0);
    matrix.vocab.index.emplace(token, static_cast<int>(i));
    float* row = matrix.row(static_cast<int>(i));
    for (int k = 0; k < dim; ++k)
      if (!(in >> row[k]))
        throw Error(Errc::ParseError, path + ": truncated at row " + std::to_string(i));
  }
  return matrix;
}

void save_emoji_set(const EmojiEmbeddingSet& set, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::IoError, "cannot write emoji embedding: " + path);
  out << "#platform: " << platform_name(set.platform) << '\n';
  out << set.vectors.size() << ' ' << set.dim << '\n';
  for (const auto& [label, vec] : set.vectors) {
    out << label;
    for (float v : vec) out << ' ' << fmt_float(v);
    out << ' ' << set.counts.at(label) << '\n';
  }
}

EmojiEmbeddingSet load_emoji_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open emoji embedding: " + path);
  std::string tag;
  std::getline(in, tag);
  const std::string prefix = "#platform: ";
  if (tag.rfind(prefix, 0) != 0)
    throw Error(Errc::ParseError, path + ": missing #platform tag");
  auto platform = platform_from_name(tag.substr(prefix.size()));
  if (!platform) throw Error(Errc::ParseError, path + ": unknown platform");
  EmojiEmbeddingSet set;
  set.platform = *platform;
  std::size_t n;
  if (!(in >> n >> set.dim) || set.dim <= 0)
    throw Error(Errc::ParseError, path + ": bad header");
  for (std::size_t i = 0; i < n; ++i) {
    std::string label;
    std::int64_t count;
    std::vector<float> vec(set.dim);
    if (!(in >> label)) throw Error(Errc::ParseError, path + ": truncated");
    for (int k = 0; k < set.dim; ++k)
      if (!(in >> vec[k])) throw Error(Errc::ParseError, path + ": truncated");
    if (!(in >> count)) throw Error(Errc::ParseError, path + ": truncated");
    set.vectors.emplace(label, std::move(vec));
    set.counts.emplace(label, count);
  }
  return set;
}

std::vector<TokenSeq> tokenize_corpus(const PlatformCorpus& corpus,
                                      const TokenizeConfig& config,
                                      const EmojiInventory& inventory) {
  std::vector<TokenSeq> out;
  out.reserve(corpus.tweets.size());
  for (const auto& tweet : corpus.tweets)
    out.push_back(tokenize(tweet.text, config, inventory));
  return out;
}

std::vector<TokenSeq> strip_corpus(const std::vector<TokenSeq>& corpus) {
  std::vector<TokenSeq> out;
  out.reserve(corpus.size());
  for (const auto& seq : corpus) out.push_back(strip_emojis(seq));
  return out;
}

}  // namespace emojimap
