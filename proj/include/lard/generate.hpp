#pragma once

#include <array>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "lard/annotation.hpp"
#include "lard/embedding.hpp"
#include "lard/errors.hpp"
#include "lard/lexicon.hpp"
#include "lard/rng.hpp"
#include "lard/text.hpp"

namespace lard {

// ---------------------------------------------------------------------------
// Cue / connective resources
// ---------------------------------------------------------------------------

/// Editing phrases and discourse markers used to fill interregnums. Filled
/// pauses ("um", "uh") are never allowed in the list.
class CueList {
 public:
  static CueList defaults() {
    CueList c;
    for (const char* p : {"no", "sorry", "wait", "oops", "I mean", "I meant to say", "well",
                          "actually", "okay", "you know", "rather"})
      c.add(p);
    return c;
  }

  /// One phrase per line, "#" comments, blank lines ignored.
  static CueList load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw MissingFile(path.string());
    CueList c;
    std::string line;
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      try {
        c.add(detokenize(tokenize(line)));
      } catch (const EmptyInput&) {
      }
    }
    if (c.phrases_.empty()) throw Error("cue list is empty: " + path.string());
    return c;
  }

  void add(const std::string& phrase) {
    std::vector<Token> tokens = tokenize(phrase);
    for (const Token& t : tokens)
      if (t.folded == "um" || t.folded == "uh")
        throw Error("filled pauses are not valid repair cues: " + phrase);
    folded_.insert(case_fold(detokenize(tokens)));
    phrases_.push_back(std::move(tokens));
  }

  const std::vector<std::vector<Token>>& phrases() const { return phrases_; }
  bool contains_folded(std::string_view phrase) const {
    return folded_.contains(std::string(phrase));
  }

 private:
  std::vector<std::vector<Token>> phrases_;
  std::set<std::string> folded_;
};

/// Connective words/bigrams grouped by class; their presence at a restart
/// junction could make the concatenation read as fluent.
class ConnectiveList {
 public:
  static ConnectiveList defaults() {
    ConnectiveList c;
    c.add("additive", {"and", "also", "moreover", "furthermore", "plus", "as well"});
    c.add("causal", {"because", "if", "since", "so", "therefore", "thus"});
    c.add("adversative", {"but", "however", "although", "though", "yet", "whereas"});
    c.add("temporal", {"after", "before", "then", "when", "while", "until", "once"});
    return c;
  }

  /// One entry per line as "class: phrase", "#" comments.
  static ConnectiveList load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw MissingFile(path.string());
    ConnectiveList c;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      bool blank = std::all_of(line.begin(), line.end(),
                               [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); });
      if (blank) continue;
      auto colon = line.find(':');
      if (colon == std::string::npos)
        throw MalformedRecord(line_no, "expected \"class: word\"");
      std::string cls = case_fold(detokenize(tokenize(line.substr(0, colon))));
      c.add(cls, {line.substr(colon + 1)});
    }
    for (const char* cls : {"additive", "causal", "adversative", "temporal"})
      if (!c.classes_.contains(cls) || c.classes_.at(cls).empty())
        throw Error("connective class missing or empty: " + std::string(cls));
    return c;
  }

  void add(const std::string& cls, std::initializer_list<const char*> words) {
    for (const char* w : words) add(cls, std::string(w));
  }
  void add(const std::string& cls, const std::string& phrase) {
    std::string folded = case_fold(detokenize(tokenize(phrase)));
    classes_[cls].push_back(folded);
    entries_.insert(std::move(folded));
  }

  bool contains(std::string_view folded_phrase) const {
    return entries_.contains(std::string(folded_phrase));
  }
  const std::map<std::string, std::vector<std::string>>& classes() const { return classes_; }

 private:
  std::map<std::string, std::vector<std::string>> classes_;
  std::set<std::string> entries_;
};

/// Words with spurious dictionary senses (function words) that must never be
/// picked as replacement repair candidates.
inline std::set<std::string> load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingFile(path.string());
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string w;
    while (ls >> w) out.insert(case_fold(w));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

struct Counts {
  size_t repetition = 0;
  size_t replacement = 0;
  size_t restart = 0;
  size_t total() const { return repetition + replacement + restart; }
  size_t of(Kind k) const {
    switch (k) {
      case Kind::Repetition: return repetition;
      case Kind::Replacement: return replacement;
      default: return restart;
    }
  }
};

struct GenerationConfig {
  Counts counts;
  std::array<double, 3> degree_weights{1.0, 1.0, 1.0};  // degrees 1, 2, 3
  std::array<double, 3> pos_weights{1.0, 1.0, 1.0};     // noun, verb, adjective
  size_t num_hyponyms = 10;
  double cue_probability = 0.5;
  size_t context_max = 3;        // d_r upper bound
  size_t restart_prefix_max = 0; // 0 = unbounded
  size_t retry_budget = 20;
  uint64_t seed = 0;
};

struct Resources {
  const Lexicon* lexicon = nullptr;
  Embedder* embedder = nullptr;
  CueList cues = CueList::defaults();
  ConnectiveList connectives = ConnectiveList::defaults();
  std::set<std::string> stopwords;
};

// ---------------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------------

namespace detail {

/// Casing for a token copied or continued into a non-initial position: fold
/// sentence-initial tokens except "I"; tokens that were already non-initial
/// keep their surface.
inline Token displaced(const Token& src) {
  Token t = src;
  if (src.index == 0 && src.surface != "I") {
    t.surface = src.folded;
  }
  return t;
}

inline std::string pad_ordinal(size_t n) {
  std::string s = std::to_string(n);
  return std::string(s.size() < 6 ? 6 - s.size() : 0, '0') + s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Repetition
// ---------------------------------------------------------------------------

/// Duplicate the window [idx, idx+degree) right after itself. The inserted
/// copy is the repair.
inline DisfluentSentence apply_repetition(const FluentSentence& s, size_t degree, size_t idx) {
  DisfluentSentence out;
  out.tokens.assign(s.tokens.begin(), s.tokens.begin() + static_cast<long>(idx + degree));
  for (size_t i = idx; i < idx + degree; ++i) out.tokens.push_back(detail::displaced(s.tokens[i]));
  out.tokens.insert(out.tokens.end(), s.tokens.begin() + static_cast<long>(idx + degree),
                    s.tokens.end());
  reindex(out.tokens);

  out.annotation.kind = Kind::Repetition;
  out.annotation.subclass = "repetition-d" + std::to_string(degree);
  out.annotation.reparandum = {idx, idx + degree};
  out.annotation.repair = Span{idx + degree, idx + 2 * degree};
  out.annotation.interruption_point = idx + degree;
  out.provenance.fluent_sources = {s.id};
  out.provenance.params = {{"degree", degree}, {"index", idx}};
  return out;
}

/// Valid start positions: windows of the given degree containing no
/// punctuation token.
inline std::vector<size_t> repetition_indices(const FluentSentence& s, size_t degree) {
  std::vector<size_t> out;
  if (s.tokens.size() < degree) return out;
  for (size_t i = 0; i + degree <= s.tokens.size(); ++i) {
    bool ok = true;
    for (size_t k = i; k < i + degree; ++k)
      if (s.tokens[k].is_punct) ok = false;
    if (ok) out.push_back(i);
  }
  return out;
}

inline DisfluentSentence gen_repetition(const FluentSentence& s, size_t degree, Rng& rng) {
  std::vector<size_t> valid = repetition_indices(s, degree);
  if (valid.empty()) throw NoValidIndex();
  return apply_repetition(s, degree, valid[rng.uniform(valid.size())]);
}

// ---------------------------------------------------------------------------
// Replacement
// ---------------------------------------------------------------------------

/// Token positions eligible as repair candidates: non-punctuation, not a
/// stopword, indexed in the lexicon under the requested POS.
inline std::vector<size_t> repair_candidates(const FluentSentence& s, Pos pos, const Lexicon& lex,
                                             const std::set<std::string>& stopwords) {
  std::vector<size_t> out;
  for (const Token& t : s.tokens) {
    if (t.is_punct) continue;
    if (stopwords.contains(t.folded)) continue;
    if (lex.lemmatize(t.folded, pos)) out.push_back(t.index);
  }
  return out;
}

/// All hyponym lemmas of all hypernyms of the repair lemma, database order,
/// duplicates removed, at most `n` per hypernym.
inline std::vector<std::string> hyponym_pool(const Lexicon& lex, const std::string& lemma, Pos pos,
                                             size_t n) {
  std::vector<std::string> pool;
  for (SynsetId hyper : lex.hypernyms(lemma, pos))
    for (const std::string& hypo : lex.hyponym_lemmas(hyper, lemma, n))
      if (std::find(pool.begin(), pool.end(), hypo) == pool.end()) pool.push_back(hypo);
  if (pool.empty()) throw NoHyponyms(lemma);
  return pool;
}

/// Largest punctuation-free context length available before the repair word,
/// capped at d_r.
inline size_t clamp_context(const FluentSentence& s, size_t repair_idx, size_t d_r) {
  size_t avail = 0;
  while (avail < d_r && avail < repair_idx && !s.tokens[repair_idx - avail - 1].is_punct) ++avail;
  return avail;
}

/// Assemble the replacement: the reparandum (d_r context tokens + chosen
/// lemma) is inserted before the repair context, optionally followed by a cue
/// phrase as interregnum.
inline DisfluentSentence apply_replacement(const FluentSentence& s, size_t repair_idx,
                                           const std::string& chosen_lemma, size_t d_r,
                                           const std::vector<Token>* cue, Pos pos) {
  size_t start = repair_idx - d_r;
  std::vector<Token> lemma_tokens = tokenize(chosen_lemma);

  DisfluentSentence out;
  out.tokens.assign(s.tokens.begin(), s.tokens.begin() + static_cast<long>(start));
  // inserted copy of the context, then the reparandum lemma
  for (size_t i = start; i < repair_idx; ++i) out.tokens.push_back(s.tokens[i]);
  for (const Token& t : lemma_tokens) out.tokens.push_back(t);
  size_t reparandum_end = out.tokens.size();
  std::optional<Span> interregnum;
  if (cue) {
    for (const Token& t : *cue) out.tokens.push_back(t);
    interregnum = Span{reparandum_end, out.tokens.size()};
  }
  size_t repair_start = out.tokens.size();
  // continuation: the original sentence from the context onward
  for (size_t i = start; i < s.tokens.size(); ++i) out.tokens.push_back(detail::displaced(s.tokens[i]));
  reindex(out.tokens);

  out.annotation.kind = Kind::Replacement;
  out.annotation.subclass =
      std::string("replacement-") + pos_name(pos) + (cue ? "-cue" : "-nocue");
  out.annotation.reparandum = {start, reparandum_end};
  out.annotation.interregnum = interregnum;
  out.annotation.repair = Span{repair_start, repair_start + d_r + 1};
  out.annotation.interruption_point = reparandum_end;
  out.provenance.fluent_sources = {s.id};
  return out;
}

inline DisfluentSentence gen_replacement(const FluentSentence& s, Pos pos,
                                         const GenerationConfig& config, const Resources& res,
                                         Rng& rng) {
  std::vector<size_t> idxs = repair_candidates(s, pos, *res.lexicon, res.stopwords);
  if (idxs.empty()) throw NoCandidateWord(pos_name(pos));
  size_t repair_idx = idxs[rng.uniform(idxs.size())];
  std::string repair_lemma = *res.lexicon->lemmatize(s.tokens[repair_idx].folded, pos);

  std::vector<std::string> pool = hyponym_pool(*res.lexicon, repair_lemma, pos,
                                               config.num_hyponyms);
  std::vector<Candidate> candidates;
  for (const std::string& lemma : pool) {
    Candidate c;
    c.lemma = lemma;
    c.tokens.assign(s.tokens.begin(), s.tokens.begin() + static_cast<long>(repair_idx));
    for (const Token& t : tokenize(lemma)) c.tokens.push_back(t);
    c.tokens.insert(c.tokens.end(), s.tokens.begin() + static_cast<long>(repair_idx + 1),
                    s.tokens.end());
    reindex(c.tokens);
    candidates.push_back(std::move(c));
  }
  Selection winner = select_reparandum(*res.embedder, s.tokens, candidates);

  size_t d_r = clamp_context(s, repair_idx, rng.uniform(config.context_max + 1));
  const std::vector<Token>* cue = nullptr;
  size_t cue_idx = rng.uniform(res.cues.phrases().size());
  if (rng.real() < config.cue_probability) cue = &res.cues.phrases()[cue_idx];

  DisfluentSentence out = apply_replacement(s, repair_idx, winner.lemma, d_r, cue, pos);
  out.provenance.params = {{"pos", pos_name(pos)},
                           {"repair_index", repair_idx},
                           {"repair_lemma", repair_lemma},
                           {"reparandum_lemma", winner.lemma},
                           {"d_r", d_r},
                           {"num_hyponyms", config.num_hyponyms},
                           {"similarity", winner.score}};
  return out;
}

// ---------------------------------------------------------------------------
// Restart
// ---------------------------------------------------------------------------

/// Empty result means the junction is usable; otherwise the reason for
/// rejection.
inline std::string restart_junction_issue(std::span<const Token> prefix,
                                          std::span<const Token> continuation,
                                          const ConnectiveList& connectives) {
  auto last = [&](size_t k) {
    std::string out;
    for (size_t i = prefix.size() - k; i < prefix.size(); ++i) {
      if (!out.empty()) out += ' ';
      out += prefix[i].folded;
    }
    return out;
  };
  auto first = [&](size_t k) {
    std::string out;
    for (size_t i = 0; i < k; ++i) {
      if (!out.empty()) out += ' ';
      out += continuation[i].folded;
    }
    return out;
  };
  if (connectives.contains(last(1))) return "prefix ends in connective";
  if (prefix.size() >= 2 && connectives.contains(last(2))) return "prefix ends in connective bigram";
  if (connectives.contains(first(1))) return "continuation starts with connective";
  if (continuation.size() >= 2 && connectives.contains(first(2)))
    return "continuation starts with connective bigram";
  for (size_t k = 1; k <= 3; ++k)
    if (prefix.size() >= k && continuation.size() >= k && last(k) == first(k))
      return "junction would form a repetition";
  return {};
}

inline DisfluentSentence apply_restart(const FluentSentence& s1, size_t p,
                                       const FluentSentence& s2) {
  DisfluentSentence out;
  out.tokens.assign(s1.tokens.begin(), s1.tokens.begin() + static_cast<long>(p));
  for (const Token& t : s2.tokens) out.tokens.push_back(detail::displaced(t));
  reindex(out.tokens);

  out.annotation.kind = Kind::Restart;
  out.annotation.subclass = "restart";
  out.annotation.reparandum = {0, p};
  out.annotation.interruption_point = p;
  out.provenance.fluent_sources = {s1.id, s2.id};
  out.provenance.params = {{"split", p}};
  return out;
}

inline size_t draw_restart_split(const FluentSentence& s1, const GenerationConfig& config,
                                 Rng& rng) {
  size_t hi = s1.tokens.size() - 1;
  if (config.restart_prefix_max > 0) hi = std::min(hi, config.restart_prefix_max);
  return 1 + rng.uniform(hi);
}

inline DisfluentSentence gen_restart(const FluentSentence& s1, const FluentSentence& s2,
                                     const GenerationConfig& config,
                                     const ConnectiveList& connectives, Rng& rng) {
  if (s1.id == s2.id) throw Error("restart requires two distinct sentences");
  if (s1.tokens.size() < 2) throw Error("restart prefix source needs at least 2 tokens");
  size_t p = draw_restart_split(s1, config, rng);
  std::string issue = restart_junction_issue({s1.tokens.data(), p},
                                             {s2.tokens.data(), s2.tokens.size()}, connectives);
  if (!issue.empty()) throw RetryNeeded(issue);
  return apply_restart(s1, p, s2);
}

// ---------------------------------------------------------------------------
// Batch engine
// ---------------------------------------------------------------------------

struct GenerationReport {
  std::map<std::string, size_t> per_kind;
  std::map<std::string, size_t> per_subclass;
  std::map<std::string, size_t> retries;
  size_t items_total = 0;
  size_t tokens_total = 0;
  size_t tokens_disfluent = 0;
  std::vector<std::string> warnings;

  double disfluent_token_ratio() const {
    return tokens_total ? static_cast<double>(tokens_disfluent) / static_cast<double>(tokens_total)
                        : 0.0;
  }

  nlohmann::json to_json() const {
    return {{"per_kind", per_kind},
            {"per_subclass", per_subclass},
            {"retries", retries},
            {"items_total", items_total},
            {"tokens_total", tokens_total},
            {"tokens_disfluent", tokens_disfluent},
            {"disfluent_token_ratio", disfluent_token_ratio()},
            {"warnings", warnings}};
  }
};

namespace detail {

inline DisfluentSentence make_item(Kind kind, size_t ordinal, const CorpusPartition& part,
                                   const GenerationConfig& config, const Resources& res,
                                   size_t& retries) {
  uint64_t item_seed = mix_seed(config.seed, static_cast<uint64_t>(kind), ordinal);
  Rng rng(item_seed);
  auto finish = [&](DisfluentSentence s) {
    s.id = std::string(kind_name(kind)) + "-" + pad_ordinal(ordinal);
    s.provenance.seed = item_seed;
    return s;
  };

  if (kind == Kind::Repetition) {
    if (part.repetition_set.empty()) throw InsufficientCorpus("repetition set is empty");
    for (size_t attempt = 0; attempt <= config.retry_budget; ++attempt) {
      const FluentSentence& s = part.repetition_set[rng.uniform(part.repetition_set.size())];
      size_t degree = 1 + rng.weighted(config.degree_weights);
      try {
        return finish(gen_repetition(s, degree, rng));
      } catch (const NoValidIndex&) {
        ++retries;
      }
    }
    throw InsufficientCorpus("no sentence in the repetition set admits the drawn degree");
  }

  if (kind == Kind::Replacement) {
    if (part.replacement_set.empty()) throw InsufficientCorpus("replacement set is empty");
    for (size_t attempt = 0; attempt <= config.retry_budget; ++attempt) {
      const FluentSentence& s = part.replacement_set[rng.uniform(part.replacement_set.size())];
      Pos pos = static_cast<Pos>(rng.weighted(config.pos_weights));
      try {
        return finish(gen_replacement(s, pos, config, res, rng));
      } catch (const NoCandidateWord&) {
        ++retries;
      } catch (const NoHyponyms&) {
        ++retries;
      } catch (const NoScorableCandidate&) {
        ++retries;
      } catch (const AllTokensOov&) {
        ++retries;
      } catch (const WordNotFound&) {
        ++retries;
      }
    }
    throw InsufficientCorpus("replacement retries exhausted");
  }

  // restart: keep s1 and the split point, redraw s2 on junction rejection
  if (part.restart_set.size() < 2) throw InsufficientCorpus("restart set needs >= 2 sentences");
  for (size_t attempt = 0; attempt <= config.retry_budget; ++attempt) {
    const FluentSentence& s1 = part.restart_set[rng.uniform(part.restart_set.size())];
    if (s1.tokens.size() < 2) {
      ++retries;
      continue;
    }
    size_t p = draw_restart_split(s1, config, rng);
    for (size_t redraw = 0; redraw < config.retry_budget; ++redraw) {
      const FluentSentence& s2 = part.restart_set[rng.uniform(part.restart_set.size())];
      if (s2.id == s1.id) continue;
      std::string issue = restart_junction_issue({s1.tokens.data(), p},
                                                 {s2.tokens.data(), s2.tokens.size()},
                                                 res.connectives);
      if (issue.empty()) return finish(apply_restart(s1, p, s2));
      ++retries;
    }
  }
  throw InsufficientCorpus("restart retries exhausted");
}

}  // namespace detail

/// Generate exactly the requested number of items of each kind. Every item is
/// seeded by (config.seed, kind, ordinal), so the output is a pure function
/// of the inputs and independent of thread count.
inline std::pair<std::vector<DisfluentSentence>, GenerationReport> generate_batch(
    const CorpusPartition& part, const GenerationConfig& config, const Resources& res,
    size_t threads = 1) {
  struct Job {
    Kind kind;
    size_t ordinal;
  };
  std::vector<Job> jobs;
  for (Kind k : {Kind::Repetition, Kind::Replacement, Kind::Restart})
    for (size_t i = 0; i < config.counts.of(k); ++i) jobs.push_back({k, i});

  std::vector<DisfluentSentence> items(jobs.size());
  std::vector<size_t> retries(jobs.size(), 0);
  std::atomic<size_t> cursor{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      size_t j = cursor.fetch_add(1);
      if (j >= jobs.size()) return;
      try {
        items[j] = detail::make_item(jobs[j].kind, jobs[j].ordinal, part, config, res, retries[j]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  GenerationReport report;
  report.items_total = items.size();
  for (size_t j = 0; j < items.size(); ++j) {
    const DisfluentSentence& s = items[j];
    report.per_kind[kind_name(s.annotation.kind)]++;
    report.per_subclass[s.annotation.subclass]++;
    report.retries[kind_name(s.annotation.kind)] += retries[j];
    TokenLabelSequence labels = token_labels(s, InterregnumMode::Keep);
    report.tokens_total += labels.labels.size();
    for (TokenLabel l : labels.labels)
      if (l == TokenLabel::Disfluent) ++report.tokens_disfluent;
  }
  for (const char* name : {"repetition", "replacement", "restart"}) {
    report.per_kind.try_emplace(name, 0);
    report.retries.try_emplace(name, 0);
  }

  size_t input_sentences = part.repetition_set.size() + part.replacement_set.size() +
                           part.restart_set.size();
  size_t input_tokens = 0;
  for (const auto* set : {&part.repetition_set, &part.replacement_set, &part.restart_set})
    for (const FluentSentence& s : *set) input_tokens += s.tokens.size();
  if (config.counts.restart > 0 && input_sentences > 0 &&
      input_tokens < 5 * input_sentences)
    report.warnings.push_back(
        "input sentences average fewer than 5 tokens; restart generation over short or "
        "fragmentary utterances can yield sentences that still read as fluent");
  return {std::move(items), std::move(report)};
}

}  // namespace lard
