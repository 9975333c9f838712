#pragma once

#include <stdexcept>
#include <string>

namespace emojimap {

enum class Errc {
  MalformedJson,
  MissingField,
  EmptyVocab,
  NoEmojis,
  ZeroVector,
  EmptyIntersection,
  ParseError,
  PolarityOutOfRange,
  BothEmpty,
  EmptyCorpus,
  EmojiAbsent,
  SingleClass,
  TooFewExamples,
  NoKnownWords,
  LengthMismatch,
  DegenerateSample,
  SpecInvalid,
  IoError,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::MalformedJson: return "MalformedJson";
    case Errc::MissingField: return "MissingField";
    case Errc::EmptyVocab: return "EmptyVocab";
    case Errc::NoEmojis: return "NoEmojis";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::EmptyIntersection: return "EmptyIntersection";
    case Errc::ParseError: return "ParseError";
    case Errc::PolarityOutOfRange: return "PolarityOutOfRange";
    case Errc::BothEmpty: return "BothEmpty";
    case Errc::EmptyCorpus: return "EmptyCorpus";
    case Errc::EmojiAbsent: return "EmojiAbsent";
    case Errc::SingleClass: return "SingleClass";
    case Errc::TooFewExamples: return "TooFewExamples";
    case Errc::NoKnownWords: return "NoKnownWords";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::DegenerateSample: return "DegenerateSample";
    case Errc::SpecInvalid: return "SpecInvalid";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace emojimap
