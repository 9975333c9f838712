#include "emojimap/sentiment.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "emojimap/error.hpp"

namespace emojimap {

Lexicon load_lexicon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open lexicon: " + path);
  Lexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw Error(Errc::ParseError,
                  path + ":" + std::to_string(line_no) + ": expected word<TAB>polarity");
    double p;
    try {
      p = std::stod(line.substr(tab + 1));
    } catch (const std::exception&) {
      throw Error(Errc::ParseError,
                  path + ":" + std::to_string(line_no) + ": bad polarity value");
    }
    if (p < -1.0 || p > 1.0)
      throw Error(Errc::PolarityOutOfRange,
                  path + ":" + std::to_string(line_no) + ": polarity outside [-1, 1]");
    lex.polarity[line.substr(0, tab)] = p;
  }
  return lex;
}

void load_negators(Lexicon& lexicon, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open negator list: " + path);
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
      line.pop_back();
    if (!line.empty() && line[0] != '#') lexicon.negators.insert(line);
  }
}

void save_lexicon(const Lexicon& lexicon, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::IoError, "cannot write lexicon: " + path);
  for (const auto& [word, p] : lexicon.polarity) out << word << '\t' << p << '\n';
}

double score(const TokenSeq& seq, const Lexicon& lexicon) {
  double sum = 0.0;
  std::size_t matched = 0;
  // positions of non-emoji tokens, so the negation window is emoji-blind
  std::vector<const Token*> toks;
  toks.reserve(seq.size());
  for (const auto& t : seq)
    if (t.kind != TokenKind::Emoji) toks.push_back(&t);

  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (toks[i]->kind != TokenKind::Word) continue;
    auto it = lexicon.polarity.find(toks[i]->surface);
    if (it == lexicon.polarity.end()) continue;
    double p = it->second;
    const std::size_t lo = i >= 3 ? i - 3 : 0;
    for (std::size_t j = lo; j < i; ++j) {
      if (toks[j]->kind == TokenKind::Word && lexicon.negators.count(toks[j]->surface)) {
        p = -p;
        break;
      }
    }
    sum += p;
    ++matched;
  }
  if (matched == 0) return 0.0;
  return std::clamp(sum / matched, -1.0, 1.0);
}

}  // namespace emojimap
