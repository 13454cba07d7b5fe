#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "lard/errors.hpp"
#include "lard/text.hpp"

namespace lard {

enum class Kind { Repetition, Replacement, Restart };

inline const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Repetition: return "repetition";
    case Kind::Replacement: return "replacement";
    default: return "restart";
  }
}

inline std::optional<Kind> kind_from_name(std::string_view name) {
  if (name == "repetition") return Kind::Repetition;
  if (name == "replacement") return Kind::Replacement;
  if (name == "restart") return Kind::Restart;
  return std::nullopt;
}

/// Half-open token range [start, end).
struct Span {
  size_t start = 0;
  size_t end = 0;
  size_t length() const { return end - start; }
  bool contains(size_t i) const { return i >= start && i < end; }
  friend bool operator==(const Span&, const Span&) = default;
};

/// The reparandum/interregnum scheme made addressable: reparandum precedes
/// the interruption point, an optional interregnum precedes the optional
/// repair. Restarts carry no repair.
struct DisfluencyAnnotation {
  Kind kind = Kind::Repetition;
  std::string subclass;
  Span reparandum;
  std::optional<Span> interregnum;
  std::optional<Span> repair;
  size_t interruption_point = 0;
};

/// Where a generated sentence came from: source fluent id(s), the algorithm
/// parameters that produced it, and the per-item seed.
struct Provenance {
  std::vector<std::string> fluent_sources;
  uint64_t seed = 0;
  nlohmann::json params = nlohmann::json::object();
};

struct DisfluentSentence {
  std::string id;
  std::vector<Token> tokens;
  DisfluencyAnnotation annotation;
  Provenance provenance;
};

/// Checks every structural invariant; returns the first violation or empty.
inline std::string check_annotation(const DisfluentSentence& s) {
  const DisfluencyAnnotation& a = s.annotation;
  size_t n = s.tokens.size();
  if (a.reparandum.end <= a.reparandum.start) return "empty reparandum";
  if (a.reparandum.end > n) return "reparandum out of range";
  if (a.interruption_point != a.reparandum.end) return "interruption point != reparandum.end";
  if (a.interregnum) {
    if (a.interregnum->start != a.reparandum.end) return "interregnum not adjacent to reparandum";
    if (a.interregnum->end <= a.interregnum->start) return "empty interregnum span";
    if (a.interregnum->end > n) return "interregnum out of range";
  }
  if (a.repair) {
    size_t expect = a.interregnum ? a.interregnum->end : a.reparandum.end;
    if (a.repair->start != expect) return "repair not adjacent";
    if (a.repair->end <= a.repair->start) return "empty repair span";
    if (a.repair->end > n) return "repair out of range";
  }
  switch (a.kind) {
    case Kind::Restart:
      if (a.repair) return "restart must not carry a repair";
      break;
    case Kind::Repetition:
      if (a.interregnum) return "repetition must not carry an interregnum";
      if (!a.repair) return "repetition requires a repair";
      if (a.repair->length() != a.reparandum.length())
        return "repetition repair length != reparandum length";
      break;
    case Kind::Replacement:
      if (!a.repair) return "replacement requires a repair";
      break;
  }
  size_t removed = a.reparandum.length() + (a.interregnum ? a.interregnum->length() : 0);
  if (removed >= n) return "nothing fluent remains";
  return {};
}

/// Bracket notation: "[reparandum + {interregnum} repair]"; restarts render
/// as "[prefix + ] continuation".
inline std::string render_notation(const DisfluentSentence& s) {
  const DisfluencyAnnotation& a = s.annotation;
  std::vector<std::string> pieces;
  for (size_t i = 0; i < s.tokens.size(); ++i) {
    if (i == a.reparandum.start) pieces.push_back("[");
    if (i == a.reparandum.end) {
      pieces.push_back("+");
      if (a.kind == Kind::Restart) pieces.push_back("]");
    }
    if (a.interregnum && i == a.interregnum->start) pieces.push_back("{");
    if (a.interregnum && i == a.interregnum->end) pieces.push_back("}");
    pieces.push_back(s.tokens[i].surface);
    if (a.repair && i + 1 == a.repair->end) pieces.push_back("]");
    if (a.interregnum && !a.repair && i + 1 == a.interregnum->end) pieces.push_back("}");
  }
  // Merge brackets onto their neighbours: "[today", "today]", "{no}".
  std::string out;
  bool glue_next = false;
  std::string prev;
  for (const std::string& p : pieces) {
    std::string last = std::exchange(prev, p);
    if (p == "[" || p == "{") {
      if (!out.empty()) out += ' ';
      out += p;
      glue_next = true;
      continue;
    }
    if (p == "]" || p == "}") {
      if (last == "+") out += ' ';  // restart: "[prefix + ] continuation"
      out += p;
      continue;
    }
    if (!glue_next && !out.empty()) out += ' ';
    out += p;
    glue_next = false;
  }
  return out;
}

enum class TokenLabel { Fluent, Disfluent };
enum class InterregnumMode { Keep, Drop };

struct TokenLabelSequence {
  std::vector<Token> tokens;
  std::vector<TokenLabel> labels;
};

/// Reparandum (and, in keep mode, interregnum) tokens are disfluent;
/// everything from the repair onward is fluent. Drop mode deletes the
/// interregnum tokens from the output entirely.
inline TokenLabelSequence token_labels(const DisfluentSentence& s, InterregnumMode mode) {
  const DisfluencyAnnotation& a = s.annotation;
  TokenLabelSequence out;
  for (size_t i = 0; i < s.tokens.size(); ++i) {
    bool in_interregnum = a.interregnum && a.interregnum->contains(i);
    if (in_interregnum && mode == InterregnumMode::Drop) continue;
    out.tokens.push_back(s.tokens[i]);
    bool disfluent = a.reparandum.contains(i) || in_interregnum;
    out.labels.push_back(disfluent ? TokenLabel::Disfluent : TokenLabel::Fluent);
  }
  reindex(out.tokens);
  return out;
}

/// Remove reparandum and interregnum; what remains is the fluent sentence.
inline std::vector<Token> reconstruct_fluent(const DisfluentSentence& s) {
  const DisfluencyAnnotation& a = s.annotation;
  std::vector<Token> out;
  for (size_t i = 0; i < s.tokens.size(); ++i) {
    if (a.reparandum.contains(i)) continue;
    if (a.interregnum && a.interregnum->contains(i)) continue;
    out.push_back(s.tokens[i]);
  }
  reindex(out);
  return out;
}

/// (disfluent text, fluent text) for translation-style detectors.
inline std::pair<std::string, std::string> to_translation_pair(const DisfluentSentence& s) {
  return {detokenize(s.tokens), detokenize(reconstruct_fluent(s))};
}

}  // namespace lard
