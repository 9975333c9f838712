#pragma once

// Directional cross-platform emoji mappings built from per-platform emoji
// embeddings by cosine similarity.

#include <string>
#include <vector>

#include "emojimap/embedding.hpp"

namespace emojimap {

double cosine_similarity(const float* a, const float* b, int dim);
double cosine_similarity(const std::vector<float>& a, const std::vector<float>& b);

struct RankedWord {
  std::string word;
  double similarity = 0.0;
};

// Top-k vocabulary words by cosine, descending; ties broken lexicographically.
std::vector<RankedWord> nearest_words(const std::vector<float>& v,
                                      const EmbeddingMatrix& matrix, int k);

struct MappingEntry {
  std::string source_emoji;
  std::string target_emoji;
  double similarity = 0.0;

  bool operator==(const MappingEntry&) const = default;
};

struct MappingTable {
  Platform source_platform = Platform::Unknown;
  Platform target_platform = Platform::Unknown;
  std::vector<MappingEntry> entries;      // sorted by source_emoji
  std::vector<std::string> shared;        // the shared emoji set E
  std::string partition_tag;              // anti-leakage marker, may be empty

  const MappingEntry* find(const std::string& source_emoji) const;
};

// For each shared emoji, its cosine-argmax counterpart among the target
// vectors; ties broken by lowest codepoint label.
MappingTable build_mapping(const EmojiEmbeddingSet& source,
                           const EmojiEmbeddingSet& target);

struct ApplyStats {
  std::size_t mapped = 0;
  std::size_t passed_through = 0;  // emoji outside the table's domain
};

TokenSeq apply_mapping(const TokenSeq& seq, const MappingTable& table,
                       ApplyStats* stats = nullptr);

// TSV: "#source=<p> target=<p>" header, rows "U+XXXX\tU+YYYY\t<sim 5dp>".
void save_mapping(const MappingTable& table, const std::string& path);
MappingTable load_mapping(const std::string& path);

}  // namespace emojimap
