#include "emojimap/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "emojimap/error.hpp"

namespace emojimap {

namespace {

// double accumulation keeps self-similarity at 1.0 to ~1e-16
double ddot(const float* a, const float* b, int dim) {
  double acc = 0.0;
  for (int i = 0; i < dim; ++i) acc += static_cast<double>(a[i]) * b[i];
  return acc;
}

bool label_less_by_codepoint(const std::string& a, const std::string& b) {
  return parse_emoji_label(a) < parse_emoji_label(b);
}

}  // namespace

double cosine_similarity(const float* a, const float* b, int dim) {
  const double na = std::sqrt(ddot(a, a, dim));
  const double nb = std::sqrt(ddot(b, b, dim));
  if (na == 0.0 || nb == 0.0)
    throw Error(Errc::ZeroVector, "cosine of zero vector");
  return ddot(a, b, dim) / (na * nb);
}

double cosine_similarity(const std::vector<float>& a, const std::vector<float>& b) {
  if (a.size() != b.size())
    throw Error(Errc::LengthMismatch, "cosine dimension mismatch");
  return cosine_similarity(a.data(), b.data(), static_cast<int>(a.size()));
}

std::vector<RankedWord> nearest_words(const std::vector<float>& v,
                                      const EmbeddingMatrix& matrix, int k) {
  if (static_cast<std::size_t>(k) > matrix.vocab.size())
    throw Error(Errc::SpecInvalid, "k exceeds vocabulary size");
  if (static_cast<int>(v.size()) != matrix.dim)
    throw Error(Errc::LengthMismatch, "query dimension mismatch");
  const double nv = std::sqrt(ddot(v.data(), v.data(), matrix.dim));
  if (nv == 0.0) throw Error(Errc::ZeroVector, "nearest_words of zero vector");

  std::vector<RankedWord> ranked;
  ranked.reserve(matrix.vocab.size());
  for (std::size_t i = 0; i < matrix.vocab.size(); ++i) {
    const std::string& word = matrix.vocab.words[i];
    if (word.rfind("U+", 0) == 0) continue;  // emoji tokens excluded
    const float* row = matrix.row(static_cast<int>(i));
    const double nr = std::sqrt(ddot(row, row, matrix.dim));
    if (nr == 0.0) continue;
    ranked.push_back({word, ddot(v.data(), row, matrix.dim) / (nv * nr)});
  }
  std::sort(ranked.begin(), ranked.end(), [](const RankedWord& a, const RankedWord& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.word < b.word;
  });
  if (ranked.size() > static_cast<std::size_t>(k)) ranked.resize(k);
  return ranked;
}

const MappingEntry* MappingTable::find(const std::string& source_emoji) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), source_emoji,
                             [](const MappingEntry& e, const std::string& s) {
                               return e.source_emoji < s;
                             });
  if (it == entries.end() || it->source_emoji != source_emoji) return nullptr;
  return &*it;
}

MappingTable build_mapping(const EmojiEmbeddingSet& source,
                           const EmojiEmbeddingSet& target) {
  if (source.dim != target.dim)
    throw Error(Errc::LengthMismatch, "emoji embedding dimensions differ");
  MappingTable table;
  table.source_platform = source.platform;
  table.target_platform = target.platform;
  for (const auto& [label, vec] : source.vectors)
    if (target.vectors.count(label)) table.shared.push_back(label);
  if (table.shared.empty())
    throw Error(Errc::EmptyIntersection, "no emoji occurs on both platforms");

  for (const auto& src_label : table.shared) {
    const auto& src_vec = source.vectors.at(src_label);
    std::string best;
    double best_sim = 0.0;
    for (const auto& tgt_label : table.shared) {
      const double sim = cosine_similarity(src_vec, target.vectors.at(tgt_label));
      if (best.empty() || sim > best_sim ||
          (sim == best_sim && label_less_by_codepoint(tgt_label, best))) {
        best = tgt_label;
        best_sim = sim;
      }
    }
    table.entries.push_back({src_label, best, best_sim});
  }
  return table;
}

TokenSeq apply_mapping(const TokenSeq& seq, const MappingTable& table,
                       ApplyStats* stats) {
  TokenSeq out;
  out.reserve(seq.size());
  for (const auto& tok : seq) {
    if (tok.kind == TokenKind::Emoji) {
      if (const MappingEntry* e = table.find(tok.surface)) {
        out.push_back({TokenKind::Emoji, e->target_emoji});
        if (stats) ++stats->mapped;
        continue;
      }
      if (stats) ++stats->passed_through;
    }
    out.push_back(tok);
  }
  return out;
}

void save_mapping(const MappingTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::IoError, "cannot write mapping: " + path);
  out << "#source=" << platform_name(table.source_platform)
      << " target=" << platform_name(table.target_platform) << '\n';
  if (!table.partition_tag.empty())
    out << "#partition=" << table.partition_tag << '\n';
  char buf[32];
  for (const auto& e : table.entries) {
    std::snprintf(buf, sizeof buf, "%.5f", e.similarity);
    out << e.source_emoji << '\t' << e.target_emoji << '\t' << buf << '\n';
  }
}

MappingTable load_mapping(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open mapping: " + path);
  MappingTable table;
  std::string line;
  std::size_t line_no = 0;
  std::set<std::string> seen;
  auto fail = [&](const std::string& msg) {
    throw Error(Errc::ParseError, path + ":" + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("#source=", 0) == 0) {
        auto sp = line.find(" target=");
        if (sp == std::string::npos) fail("bad header");
        auto s = platform_from_name(line.substr(8, sp - 8));
        auto t = platform_from_name(line.substr(sp + 8));
        if (!s || !t) fail("unknown platform in header");
        table.source_platform = *s;
        table.target_platform = *t;
      } else if (line.rfind("#partition=", 0) == 0) {
        table.partition_tag = line.substr(11);
      }
      continue;
    }
    auto t1 = line.find('\t');
    auto t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) fail("expected three tab-separated fields");
    MappingEntry e;
    e.source_emoji = line.substr(0, t1);
    e.target_emoji = line.substr(t1 + 1, t2 - t1 - 1);
    try {
      parse_emoji_label(e.source_emoji);
      parse_emoji_label(e.target_emoji);
      e.similarity = std::stod(line.substr(t2 + 1));
    } catch (const std::exception&) {
      fail("malformed row");
    }
    if (e.similarity < -1.0 || e.similarity > 1.0) fail("similarity out of range");
    if (!seen.insert(e.source_emoji).second) fail("duplicate source emoji");
    table.entries.push_back(std::move(e));
  }
  if (table.entries.empty()) fail("empty mapping");
  std::sort(table.entries.begin(), table.entries.end(),
            [](const MappingEntry& a, const MappingEntry& b) {
              return a.source_emoji < b.source_emoji;
            });
  for (const auto& e : table.entries) table.shared.push_back(e.source_emoji);
  return table;
}

}  // namespace emojimap
