#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "lard/errors.hpp"
#include "lard/text.hpp"

namespace lard {

enum class Pos { Noun, Verb, Adjective };

inline const char* pos_name(Pos p) {
  switch (p) {
    case Pos::Noun: return "noun";
    case Pos::Verb: return "verb";
    default: return "adjective";
  }
}

/// Database-local synset identifier.
struct SynsetId {
  Pos pos = Pos::Noun;
  uint32_t offset = 0;
  friend bool operator==(const SynsetId&, const SynsetId&) = default;
  uint64_t key() const { return (static_cast<uint64_t>(pos) << 32) | offset; }
};

struct Synset {
  std::vector<std::string> lemmas;  // folded, underscores for spaces
  std::vector<SynsetId> hypernyms;
  std::vector<SynsetId> hyponyms;
  std::vector<SynsetId> related;  // similar-to cluster (adjectives)
};

namespace detail {

inline std::string underscored(std::string_view lemma) {
  std::string out = case_fold(lemma);
  std::replace(out.begin(), out.end(), ' ', '_');
  return out;
}

inline std::string spaced(std::string_view lemma) {
  std::string out(lemma);
  std::replace(out.begin(), out.end(), '_', ' ');
  return out;
}

inline size_t word_count(std::string_view lemma) {
  return 1 + static_cast<size_t>(std::count(lemma.begin(), lemma.end(), '_')) +
         static_cast<size_t>(std::count(lemma.begin(), lemma.end(), ' '));
}

}  // namespace detail

/// Read-only lexical database in the WordNet 3.0 file format (index.pos /
/// data.pos for noun, verb, adj). Fully in-memory after load.
class Lexicon {
 public:
  static Lexicon load(const std::filesystem::path& dir) {
    Lexicon lex;
    static constexpr std::pair<Pos, const char*> kParts[] = {
        {Pos::Noun, "noun"}, {Pos::Verb, "verb"}, {Pos::Adjective, "adj"}};
    for (auto [pos, suffix] : kParts) {
      lex.parse_data(dir / (std::string("data.") + suffix), pos);
      lex.parse_index(dir / (std::string("index.") + suffix), pos);
    }
    lex.verify();
    return lex;
  }

  /// POS classes under which the word (after minimal lemmatization) is
  /// indexed; empty set if absent.
  std::set<Pos> pos_tags(std::string_view word) const {
    std::set<Pos> out;
    for (Pos pos : {Pos::Noun, Pos::Verb, Pos::Adjective})
      if (lemmatize(word, pos)) out.insert(pos);
    return out;
  }

  /// Strip "s"/"es"/"ies"/"ing"/"ed" (with -e restoration), keeping only
  /// forms the database indexes under the given POS.
  std::optional<std::string> lemmatize(std::string_view word, Pos pos) const {
    std::string w = detail::underscored(word);
    if (indexed(w, pos)) return w;
    auto ends = [&](std::string_view suf) {
      return w.size() > suf.size() && w.ends_with(suf);
    };
    std::vector<std::string> tries;
    if (ends("ies")) tries.push_back(w.substr(0, w.size() - 3) + "y");
    if (ends("es")) tries.push_back(w.substr(0, w.size() - 2));
    if (ends("s")) tries.push_back(w.substr(0, w.size() - 1));
    if (ends("ing")) {
      tries.push_back(w.substr(0, w.size() - 3));
      tries.push_back(w.substr(0, w.size() - 3) + "e");
    }
    if (ends("ed")) {
      tries.push_back(w.substr(0, w.size() - 2));
      tries.push_back(w.substr(0, w.size() - 1));  // -d, "baked" -> "bake"
    }
    for (const std::string& t : tries)
      if (indexed(t, pos)) return t;
    return std::nullopt;
  }

  /// Hypernym synsets pooled over all senses of (word, pos), database order,
  /// duplicates removed. Adjectives have no hypernym tree; their similar-to
  /// cluster substitutes.
  std::vector<SynsetId> hypernyms(std::string_view word, Pos pos) const {
    std::string w = detail::underscored(word);
    auto it = index_.find(index_key(w, pos));
    if (it == index_.end()) throw WordNotFound(std::string(word));
    std::vector<SynsetId> out;
    for (SynsetId sense : it->second) {
      const Synset& syn = synset(sense);
      const std::vector<SynsetId>& ups = pos == Pos::Adjective ? syn.related : syn.hypernyms;
      for (SynsetId id : ups)
        if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
    }
    return out;
  }

  /// Up to N hyponym lemmas of the synset in database order, underscores
  /// replaced by spaces, skipping the excluded lemma and lemmas longer than
  /// 4 words. For adjective synsets the member lemmas themselves (plus the
  /// cluster mates) form the pool.
  std::vector<std::string> hyponym_lemmas(SynsetId id, std::string_view exclude, size_t n) const {
    if (n == 0) throw Error("hyponym limit must be positive");
    const Synset& syn = synset(id);
    std::string excl = detail::underscored(exclude);
    std::vector<std::string> out;
    auto take = [&](const std::vector<std::string>& lemmas) {
      for (const std::string& lemma : lemmas) {
        if (out.size() >= n) return;
        if (lemma == excl) continue;
        if (detail::word_count(lemma) > 4) continue;
        std::string s = detail::spaced(lemma);
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
      }
    };
    if (id.pos == Pos::Adjective) {
      take(syn.lemmas);
      for (SynsetId rel : syn.related) {
        if (out.size() >= n) break;
        take(synset(rel).lemmas);
      }
    } else {
      for (SynsetId hypo : syn.hyponyms) {
        if (out.size() >= n) break;
        take(synset(hypo).lemmas);
      }
    }
    return out;
  }

  const Synset& synset(SynsetId id) const {
    auto it = synsets_.find(id.key());
    if (it == synsets_.end())
      throw Error("unresolved synset offset " + std::to_string(id.offset));
    return it->second;
  }

  bool indexed(std::string_view lemma, Pos pos) const {
    return index_.contains(index_key(detail::underscored(lemma), pos));
  }

  size_t synset_count(Pos pos) const {
    size_t c = 0;
    for (const auto& [key, syn] : synsets_)
      if (static_cast<Pos>(key >> 32) == pos) ++c;
    return c;
  }

  const std::unordered_map<uint64_t, Synset>& synsets() const { return synsets_; }

 private:
  static std::string index_key(std::string_view lemma, Pos pos) {
    return std::string(lemma) + '\x1f' + pos_name(pos)[0];
  }

  static Pos pos_from_char(char c) {
    switch (c) {
      case 'n': return Pos::Noun;
      case 'v': return Pos::Verb;
      default: return Pos::Adjective;  // 'a' and satellite 's'
    }
  }

  void parse_data(const std::filesystem::path& path, Pos pos) {
    std::ifstream in(path);
    if (!in) throw MissingFile(path.string());
    std::string line;
    size_t byte_off = 0;
    while (std::getline(in, line)) {
      size_t line_off = byte_off;
      byte_off += line.size() + 1;
      if (line.empty() || line[0] == ' ') continue;  // license header

      std::istringstream ls(line);
      auto fail = [&](const char* what) { throw ParseError(path.string(), line_off, what); };
      uint32_t offset;
      int lex_filenum;
      char ss_type;
      if (!(ls >> offset >> lex_filenum >> ss_type)) fail("bad synset header");
      unsigned w_cnt;
      if (!(ls >> std::hex >> w_cnt >> std::dec) || w_cnt == 0) fail("bad word count");
      Synset syn;
      for (unsigned i = 0; i < w_cnt; ++i) {
        std::string word, lex_id;
        if (!(ls >> word >> lex_id)) fail("truncated word list");
        syn.lemmas.push_back(case_fold(word));
      }
      unsigned p_cnt;
      if (!(ls >> p_cnt)) fail("bad pointer count");
      for (unsigned i = 0; i < p_cnt; ++i) {
        std::string symbol, st;
        uint32_t target;
        char target_pos;
        if (!(ls >> symbol >> target >> target_pos >> st)) fail("truncated pointer list");
        SynsetId tid{pos_from_char(target_pos), target};
        if (symbol == "@" || symbol == "@i")
          syn.hypernyms.push_back(tid);
        else if (symbol == "~" || symbol == "~i")
          syn.hyponyms.push_back(tid);
        else if (symbol == "&")
          syn.related.push_back(tid);
      }
      synsets_.emplace(SynsetId{pos, offset}.key(), std::move(syn));
    }
  }

  void parse_index(const std::filesystem::path& path, Pos pos) {
    std::ifstream in(path);
    if (!in) throw MissingFile(path.string());
    std::string line;
    size_t byte_off = 0;
    while (std::getline(in, line)) {
      size_t line_off = byte_off;
      byte_off += line.size() + 1;
      if (line.empty() || line[0] == ' ') continue;

      std::istringstream ls(line);
      auto fail = [&](const char* what) { throw ParseError(path.string(), line_off, what); };
      std::string lemma, pos_tag;
      unsigned synset_cnt, p_cnt;
      if (!(ls >> lemma >> pos_tag >> synset_cnt >> p_cnt)) fail("bad index header");
      std::string skip;
      for (unsigned i = 0; i < p_cnt; ++i)
        if (!(ls >> skip)) fail("truncated pointer symbols");
      unsigned sense_cnt, tagsense_cnt;
      if (!(ls >> sense_cnt >> tagsense_cnt)) fail("bad sense counts");
      std::vector<SynsetId> senses;
      for (unsigned i = 0; i < synset_cnt; ++i) {
        uint32_t off;
        if (!(ls >> off)) fail("truncated offset list");
        senses.push_back(SynsetId{pos, off});
      }
      index_.emplace(index_key(case_fold(lemma), pos), std::move(senses));
    }
  }

  void verify() const {
    for (const auto& [key, senses] : index_) {
      if (senses.empty())
        throw ParseError("index", 0, "lemma with no synsets: " + key.substr(0, key.size() - 2));
      for (SynsetId id : senses) synset(id);
    }
  }

  std::unordered_map<uint64_t, Synset> synsets_;
  std::unordered_map<std::string, std::vector<SynsetId>> index_;
};

}  // namespace lard
