#pragma once

#include <algorithm>
#include <cctype>
#include <istream>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lard/errors.hpp"
#include "lard/rng.hpp"

namespace lard {

inline bool is_punct_char(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return u < 128 && std::ispunct(u);
}

/// Simple lowercase folding (ASCII); multi-byte UTF-8 passes through.
inline std::string case_fold(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    unsigned char u = static_cast<unsigned char>(c);
    if (u < 128) c = static_cast<char>(std::tolower(u));
  }
  return out;
}

inline bool is_all_punct(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), is_punct_char);
}

/// Atomic text unit. Indices are 0-based positions within the sentence.
struct Token {
  std::string surface;
  std::string folded;
  bool is_punct = false;
  size_t index = 0;

  static Token make(std::string surface, size_t index) {
    Token t;
    t.folded = case_fold(surface);
    t.is_punct = is_all_punct(surface);
    t.surface = std::move(surface);
    t.index = index;
    return t;
  }
};

inline bool operator==(const Token& a, const Token& b) {
  return a.surface == b.surface && a.index == b.index;
}

/// Re-assign 0..n-1 indices after any splice.
inline void reindex(std::vector<Token>& tokens) {
  for (size_t i = 0; i < tokens.size(); ++i) tokens[i].index = i;
}

/// Whitespace split; leading/trailing punctuation characters become
/// standalone tokens; internal apostrophes and hyphens are kept ("Let's"
/// is one token).
inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) continue;
    std::string_view chunk = text.substr(start, i - start);

    size_t lead = 0;
    while (lead < chunk.size() && is_punct_char(chunk[lead])) ++lead;
    if (lead == chunk.size()) {
      // punctuation-only chunk: one token per character
      for (char c : chunk) tokens.push_back(Token::make(std::string(1, c), tokens.size()));
      continue;
    }
    size_t trail = chunk.size();
    while (trail > lead && is_punct_char(chunk[trail - 1])) --trail;

    for (size_t k = 0; k < lead; ++k)
      tokens.push_back(Token::make(std::string(1, chunk[k]), tokens.size()));
    tokens.push_back(Token::make(std::string(chunk.substr(lead, trail - lead)), tokens.size()));
    for (size_t k = trail; k < chunk.size(); ++k)
      tokens.push_back(Token::make(std::string(1, chunk[k]), tokens.size()));
  }
  if (tokens.empty()) throw EmptyInput();
  return tokens;
}

/// Join surfaces with single spaces (the normalized sentence form used by all
/// text exports).
inline std::string detokenize(std::span<const Token> tokens) {
  std::string out;
  for (const Token& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t.surface;
  }
  return out;
}

/// A source utterance. `id` is corpus-unique; `source` is a free-text
/// provenance tag.
struct FluentSentence {
  std::string id;
  std::vector<Token> tokens;
  std::string source;
};

enum class CorpusFormat { PlainLines, JsonLines };

/// One FluentSentence per non-blank line (plain) or per record (json-lines,
/// required "text", optional "id"). Sequential ids when absent.
inline std::vector<FluentSentence> load_corpus(std::istream& in, CorpusFormat format,
                                               std::string source_tag = "") {
  std::vector<FluentSentence> corpus;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool blank = std::all_of(line.begin(), line.end(),
                             [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
    if (blank) continue;

    FluentSentence s;
    s.source = source_tag;
    if (format == CorpusFormat::PlainLines) {
      s.id = std::to_string(corpus.size());
      s.tokens = tokenize(line);
    } else {
      nlohmann::json rec = nlohmann::json::parse(line, nullptr, false);
      if (rec.is_discarded() || !rec.is_object() || !rec.contains("text") ||
          !rec["text"].is_string())
        throw MalformedRecord(line_no, "expected an object with a string \"text\" field");
      if (rec.contains("id"))
        s.id = rec["id"].is_string() ? rec["id"].get<std::string>() : rec["id"].dump();
      else
        s.id = std::to_string(corpus.size());
      try {
        s.tokens = tokenize(rec["text"].get<std::string>());
      } catch (const EmptyInput&) {
        throw MalformedRecord(line_no, "record text is empty");
      }
    }
    corpus.push_back(std::move(s));
  }
  return corpus;
}

/// Disjoint per-algorithm subsets of the fluent corpus.
struct CorpusPartition {
  std::vector<FluentSentence> repetition_set;
  std::vector<FluentSentence> replacement_set;
  std::vector<FluentSentence> restart_set;
  uint64_t seed = 0;
};

/// Seeded shuffle followed by a largest-remainder split of the normalized
/// weights. Pure function of (corpus order, weights, seed); ties in the
/// apportionment go to the earlier set.
inline CorpusPartition partition(std::vector<FluentSentence> corpus,
                                 std::span<const double, 3> weights, uint64_t seed) {
  if (corpus.empty()) throw EmptyCorpus();
  double total = weights[0] + weights[1] + weights[2];
  if (!(total > 0.0)) throw Error("partition weights must sum to a positive value");

  Rng rng(seed);
  rng.shuffle(corpus);

  size_t n = corpus.size();
  size_t sizes[3];
  double remainders[3];
  size_t assigned = 0;
  for (int k = 0; k < 3; ++k) {
    double exact = static_cast<double>(n) * (weights[k] / total);
    sizes[k] = static_cast<size_t>(exact);
    remainders[k] = exact - static_cast<double>(sizes[k]);
    assigned += sizes[k];
  }
  size_t order[3] = {0, 1, 2};
  std::stable_sort(order, order + 3,
                   [&](size_t a, size_t b) { return remainders[a] > remainders[b]; });
  for (size_t k = 0; assigned < n; ++k, ++assigned) ++sizes[order[k % 3]];

  CorpusPartition part;
  part.seed = seed;
  auto it = corpus.begin();
  part.repetition_set.assign(std::make_move_iterator(it), std::make_move_iterator(it + sizes[0]));
  it += sizes[0];
  part.replacement_set.assign(std::make_move_iterator(it), std::make_move_iterator(it + sizes[1]));
  it += sizes[1];
  part.restart_set.assign(std::make_move_iterator(it), std::make_move_iterator(it + sizes[2]));
  return part;
}

}  // namespace lard
