#pragma once

// Lexicon-based sentence polarity oracle. Scores are in [-1, 1], 0 neutral.

#include <functional>
#include <map>
#include <set>
#include <string>

#include "emojimap/text.hpp"

namespace emojimap {

struct Lexicon {
  std::map<std::string, double> polarity;  // word -> [-1, 1]
  std::set<std::string> negators;
};

// TSV: word<TAB>polarity, '#' comments.
Lexicon load_lexicon(const std::string& path);
// One negator per line, added to an existing lexicon.
void load_negators(Lexicon& lexicon, const std::string& path);
void save_lexicon(const Lexicon& lexicon, const std::string& path);

// Mean polarity of matched Word tokens; a match preceded by a negator within
// 3 tokens contributes with flipped sign. Emoji tokens are ignored. No
// matches -> 0. Clamped to [-1, 1].
double score(const TokenSeq& seq, const Lexicon& lexicon);

// Anything mapping a token sequence to [-1, 1]; lets an external scorer
// replace the bundled lexicon oracle.
using Scorer = std::function<double(const TokenSeq&)>;

inline Scorer make_scorer(const Lexicon& lexicon) {
  return [&lexicon](const TokenSeq& seq) { return score(seq, lexicon); };
}

}  // namespace emojimap
