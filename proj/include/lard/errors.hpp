#pragma once

#include <stdexcept>
#include <string>

namespace lard {

/// Base class for all recoverable errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// textcore
struct EmptyInput : Error {
  EmptyInput() : Error("input contains no non-whitespace character") {}
};
struct MalformedRecord : Error {
  size_t line_number;
  MalformedRecord(size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_number(line) {}
};
struct EmptyCorpus : Error {
  EmptyCorpus() : Error("corpus is empty") {}
};

// lexicon
struct MissingFile : Error {
  explicit MissingFile(const std::string& path) : Error("missing file: " + path) {}
};
struct ParseError : Error {
  std::string file;
  size_t offset;
  ParseError(std::string f, size_t off, const std::string& what)
      : Error(f + " @" + std::to_string(off) + ": " + what), file(std::move(f)), offset(off) {}
};
struct WordNotFound : Error {
  explicit WordNotFound(const std::string& word) : Error("word not found: " + word) {}
};

// scorer
struct AllTokensOov : Error {
  AllTokensOov() : Error("no token of the sentence is in the vector vocabulary") {}
};
struct ServiceUnavailable : Error {
  explicit ServiceUnavailable(const std::string& what) : Error("embedding service: " + what) {}
};
struct ZeroNorm : Error {
  ZeroNorm() : Error("cosine is undefined for a zero-norm vector") {}
};
struct DimensionMismatch : Error {
  DimensionMismatch(size_t a, size_t b)
      : Error("vector dimensions differ: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};
struct NoScorableCandidate : Error {
  NoScorableCandidate() : Error("every candidate sentence failed to embed") {}
};

// forge
struct NoValidIndex : Error {
  NoValidIndex() : Error("no punctuation-free window of the requested degree") {}
};
struct NoCandidateWord : Error {
  explicit NoCandidateWord(const std::string& pos)
      : Error("sentence has no usable " + pos + " token") {}
};
struct NoHyponyms : Error {
  explicit NoHyponyms(const std::string& lemma) : Error("empty hyponym pool for: " + lemma) {}
};
struct RetryNeeded : Error {
  explicit RetryNeeded(const std::string& why) : Error(why) {}
};
struct Exhausted : Error {
  explicit Exhausted(const std::string& what) : Error("retry budget exhausted: " + what) {}
};
struct InsufficientCorpus : Error {
  explicit InsufficientCorpus(const std::string& what)
      : Error("corpus subset cannot supply the requested items: " + what) {}
};

}  // namespace lard
