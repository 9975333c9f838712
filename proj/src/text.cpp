#include "emojimap/text.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "emojimap/error.hpp"

namespace emojimap {

std::vector<char32_t> utf8_decode(const std::string& s) {
  std::vector<char32_t> out;
  std::size_t i = 0;
  const auto n = s.size();
  while (i < n) {
    unsigned char c = s[i];
    char32_t cp = 0xFFFD;
    std::size_t len = 1;
    if (c < 0x80) {
      cp = c;
    } else if ((c >> 5) == 0x6 && i + 1 < n) {
      cp = (c & 0x1F) << 6 | (s[i + 1] & 0x3F);
      len = 2;
    } else if ((c >> 4) == 0xE && i + 2 < n) {
      cp = (c & 0x0F) << 12 | (s[i + 1] & 0x3F) << 6 | (s[i + 2] & 0x3F);
      len = 3;
    } else if ((c >> 3) == 0x1E && i + 3 < n) {
      cp = (c & 0x07) << 18 | (s[i + 1] & 0x3F) << 12 | (s[i + 2] & 0x3F) << 6 |
           (s[i + 3] & 0x3F);
      len = 4;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string utf8_encode(const std::vector<char32_t>& cps) {
  std::string out;
  for (char32_t cp : cps) {
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
  }
  return out;
}

std::string emoji_label(const std::vector<char32_t>& seq) {
  std::ostringstream os;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) os << '-';
    os << "U+" << std::uppercase << std::hex << std::setw(4) << std::setfill('0')
       << static_cast<std::uint32_t>(seq[i]);
  }
  return os.str();
}

std::vector<char32_t> parse_emoji_label(const std::string& label) {
  std::vector<char32_t> seq;
  std::size_t pos = 0;
  while (pos < label.size()) {
    if (label.compare(pos, 2, "U+") != 0)
      throw Error(Errc::ParseError, "bad emoji label: " + label);
    pos += 2;
    std::size_t end = label.find('-', pos);
    if (end == std::string::npos) end = label.size();
    char32_t cp = 0;
    for (std::size_t i = pos; i < end; ++i) {
      char c = label[i];
      int d;
      if (c >= '0' && c <= '9') d = c - '0';
      else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
      else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
      else throw Error(Errc::ParseError, "bad emoji label: " + label);
      cp = cp * 16 + d;
    }
    if (pos == end || cp > 0x10FFFF)
      throw Error(Errc::ParseError, "bad emoji label: " + label);
    seq.push_back(cp);
    pos = end + (end < label.size() ? 1 : 0);
  }
  if (seq.empty()) throw Error(Errc::ParseError, "empty emoji label");
  return seq;
}

EmojiInventory EmojiInventory::defaults() {
  EmojiInventory inv;
  // Emoticons block: faces, gestures (includes fearful face U+1F628 and
  // person pouting U+1F64E).
  for (char32_t cp = 0x1F600; cp <= 0x1F64F; ++cp) inv.add(cp);
  // Common emotional signals outside the block.
  for (char32_t cp : {0x1F44D, 0x1F44E, 0x1F44F, 0x1F48B, 0x1F494, 0x1F4AA,
                      0x1F525, 0x1F382, 0x2764, 0x1F389, 0x1F622, 0x1F92D})
    inv.add(static_cast<char32_t>(cp));
  return inv;
}

void EmojiInventory::add(const std::vector<char32_t>& seq) {
  if (seq.empty()) throw Error(Errc::ParseError, "empty emoji sequence");
  if (std::find(sequences_.begin(), sequences_.end(), seq) != sequences_.end())
    return;
  sequences_.push_back(seq);
  std::sort(sequences_.begin(), sequences_.end(),
            [](const auto& a, const auto& b) {
              if (a.size() != b.size()) return a.size() > b.size();
              return a < b;
            });
  if (seq.size() == 1) singles_.insert(seq[0]);
  max_len_ = std::max(max_len_, seq.size());
}

bool EmojiInventory::contains(char32_t cp) const { return singles_.count(cp) > 0; }

std::size_t EmojiInventory::match_at(const std::vector<char32_t>& text,
                                     std::size_t pos) const {
  if (max_len_ > 1) {
    for (const auto& seq : sequences_) {
      if (seq.size() == 1) break;  // singles handled below
      if (pos + seq.size() > text.size()) continue;
      if (std::equal(seq.begin(), seq.end(), text.begin() + pos)) return seq.size();
    }
  }
  return pos < text.size() && singles_.count(text[pos]) ? 1 : 0;
}

EmojiInventory EmojiInventory::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open inventory: " + path);
  EmojiInventory inv;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
      line.pop_back();
    if (line.empty()) continue;
    inv.add(parse_emoji_label(line));
  }
  if (inv.empty()) throw Error(Errc::ParseError, "empty inventory: " + path);
  return inv;
}

void EmojiInventory::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error(Errc::IoError, "cannot write inventory: " + path);
  for (const auto& seq : sequences_) out << emoji_label(seq) << '\n';
}

std::vector<std::string> EmojiInventory::labels() const {
  std::vector<std::string> out;
  out.reserve(sequences_.size());
  for (const auto& seq : sequences_) out.push_back(emoji_label(seq));
  return out;
}

bool is_emoji(char32_t cp, const EmojiInventory& inventory) {
  return inventory.contains(cp);
}

StopwordList StopwordList::defaults() {
  static const char* kWords[] = {
      "a", "about", "above", "after", "again", "against", "all", "am", "an",
      "and", "any", "are", "aren't", "as", "at", "be", "because", "been",
      "before", "being", "below", "between", "both", "but", "by", "can't",
      "cannot", "could", "couldn't", "did", "didn't", "do", "does", "doesn't",
      "doing", "don't", "down", "during", "each", "few", "for", "from",
      "further", "had", "hadn't", "has", "hasn't", "have", "haven't", "having",
      "he", "he'd", "he'll", "he's", "her", "here", "here's", "hers",
      "herself", "him", "himself", "his", "how", "how's", "i", "i'd", "i'll",
      "i'm", "i've", "if", "in", "into", "is", "isn't", "it", "it's", "its",
      "itself", "let's", "me", "more", "most", "mustn't", "my", "myself",
      "no", "nor", "not", "of", "off", "on", "once", "only", "or", "other",
      "ought", "our", "ours", "ourselves", "out", "over", "own", "same",
      "shan't", "she", "she'd", "she'll", "she's", "should", "shouldn't",
      "so", "some", "such", "than", "that", "that's", "the", "their",
      "theirs", "them", "themselves", "then", "there", "there's", "these",
      "they", "they'd", "they'll", "they're", "they've", "this", "those",
      "through", "to", "too", "under", "until", "up", "very", "was",
      "wasn't", "we", "we'd", "we'll", "we're", "we've", "were", "weren't",
      "what", "what's", "when", "when's", "where", "where's", "which",
      "while", "who", "who's", "whom", "why", "why's", "with", "won't",
      "would", "wouldn't", "you", "you'd", "you'll", "you're", "you've",
      "your", "yours", "yourself", "yourselves"};
  StopwordList list;
  for (const char* w : kWords) list.add(w);
  return list;
}

StopwordList StopwordList::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open stopword list: " + path);
  StopwordList list;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
      line.pop_back();
    if (!line.empty() && line[0] != '#') list.add(line);
  }
  return list;
}

namespace {

bool is_word_char(char32_t cp, const EmojiInventory& inv) {
  if (cp < 0x80)
    return std::isalnum(static_cast<unsigned char>(cp)) || cp == '\'';
  // Non-ASCII letters pass through; inventory codepoints never join words.
  return !inv.contains(cp) && cp != 0xFFFD;
}

bool is_space(char32_t cp) {
  return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == 0x00A0;
}

bool starts_with(const std::vector<char32_t>& text, std::size_t pos,
                 std::string_view ascii) {
  if (pos + ascii.size() > text.size()) return false;
  for (std::size_t i = 0; i < ascii.size(); ++i) {
    char32_t cp = text[pos + i];
    char32_t lower = (cp >= 'A' && cp <= 'Z') ? cp + 32 : cp;
    if (lower != static_cast<char32_t>(ascii[i])) return false;
  }
  return true;
}

}  // namespace

TokenSeq tokenize(const std::string& text, const TokenizeConfig& config,
                  const EmojiInventory& inventory) {
  const auto cps = utf8_decode(text);
  TokenSeq out;
  std::size_t i = 0;
  while (i < cps.size()) {
    if (std::size_t len = inventory.match_at(cps, i); len > 0) {
      out.push_back({TokenKind::Emoji,
                     emoji_label({cps.begin() + i, cps.begin() + i + len})});
      i += len;
      continue;
    }
    if (starts_with(cps, i, "http://") || starts_with(cps, i, "https://")) {
      while (i < cps.size() && !is_space(cps[i]) && inventory.match_at(cps, i) == 0)
        ++i;
      out.push_back({TokenKind::UrlPlaceholder, kUrlSurface});
      continue;
    }
    if (cps[i] == '@' && i + 1 < cps.size() && is_word_char(cps[i + 1], inventory)) {
      ++i;
      while (i < cps.size() && is_word_char(cps[i], inventory) &&
             inventory.match_at(cps, i) == 0)
        ++i;
      out.push_back({TokenKind::MentionPlaceholder, kMentionSurface});
      continue;
    }
    if (cps[i] == '#' && i + 1 < cps.size() && is_word_char(cps[i + 1], inventory)) {
      ++i;  // hashtags keep their word part
      continue;
    }
    if (is_word_char(cps[i], inventory)) {
      std::vector<char32_t> word;
      while (i < cps.size() && is_word_char(cps[i], inventory) &&
             inventory.match_at(cps, i) == 0) {
        char32_t cp = cps[i];
        if (cp >= 'A' && cp <= 'Z') cp += 32;
        word.push_back(cp);
        ++i;
      }
      std::string surface = utf8_encode(word);
      if (!config.stopwords.contains(surface))
        out.push_back({TokenKind::Word, std::move(surface)});
      continue;
    }
    ++i;
  }
  return out;
}

TokenSeq strip_emojis(const TokenSeq& seq) {
  TokenSeq out;
  out.reserve(seq.size());
  for (const auto& t : seq)
    if (t.kind != TokenKind::Emoji) out.push_back(t);
  return out;
}

}  // namespace emojimap
