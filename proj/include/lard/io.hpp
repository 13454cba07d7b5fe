#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lard/annotation.hpp"
#include "lard/errors.hpp"

namespace lard {

inline nlohmann::json span_to_json(const Span& s) { return nlohmann::json::array({s.start, s.end}); }

inline Span span_from_json(const nlohmann::json& j) {
  return Span{j.at(0).get<size_t>(), j.at(1).get<size_t>()};
}

inline nlohmann::json record_to_json(const DisfluentSentence& s) {
  nlohmann::json j;
  j["id"] = s.id;
  j["kind"] = kind_name(s.annotation.kind);
  j["subclass"] = s.annotation.subclass;
  nlohmann::json toks = nlohmann::json::array();
  for (const Token& t : s.tokens) toks.push_back(t.surface);
  j["tokens"] = std::move(toks);
  j["reparandum"] = span_to_json(s.annotation.reparandum);
  j["interregnum"] =
      s.annotation.interregnum ? span_to_json(*s.annotation.interregnum) : nlohmann::json();
  j["repair"] = s.annotation.repair ? span_to_json(*s.annotation.repair) : nlohmann::json();
  j["interruption_point"] = s.annotation.interruption_point;
  j["notation"] = render_notation(s);
  j["fluent_sources"] = s.provenance.fluent_sources;
  j["seed"] = s.provenance.seed;
  j["params"] = s.provenance.params;
  return j;
}

inline DisfluentSentence record_from_json(const nlohmann::json& j, size_t line_no = 0) {
  try {
    DisfluentSentence s;
    s.id = j.at("id").is_string() ? j.at("id").get<std::string>() : j.at("id").dump();
    auto k = kind_from_name(j.at("kind").get<std::string>());
    if (!k) throw MalformedRecord(line_no, "unknown kind");
    s.annotation.kind = *k;
    s.annotation.subclass = j.value("subclass", std::string{});
    for (const auto& surf : j.at("tokens"))
      s.tokens.push_back(Token::make(surf.get<std::string>(), s.tokens.size()));
    s.annotation.reparandum = span_from_json(j.at("reparandum"));
    if (j.contains("interregnum") && !j.at("interregnum").is_null())
      s.annotation.interregnum = span_from_json(j.at("interregnum"));
    if (j.contains("repair") && !j.at("repair").is_null())
      s.annotation.repair = span_from_json(j.at("repair"));
    s.annotation.interruption_point = j.at("interruption_point").get<size_t>();
    if (j.contains("fluent_sources"))
      for (const auto& src : j.at("fluent_sources"))
        s.provenance.fluent_sources.push_back(src.get<std::string>());
    s.provenance.seed = j.value("seed", uint64_t{0});
    if (j.contains("params")) s.provenance.params = j.at("params");
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw MalformedRecord(line_no, e.what());
  }
}

inline void write_jsonl(std::ostream& out, const std::vector<DisfluentSentence>& items) {
  for (const DisfluentSentence& s : items) out << record_to_json(s).dump() << '\n';
}

inline std::vector<DisfluentSentence> read_jsonl(std::istream& in) {
  std::vector<DisfluentSentence> items;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) throw MalformedRecord(line_no, "invalid JSON");
    items.push_back(record_from_json(j, line_no));
  }
  return items;
}

/// Token TAB label per line, "O" fluent / "D" disfluent, blank line between
/// sentences.
inline void write_tagging(std::ostream& out, const std::vector<DisfluentSentence>& items,
                          InterregnumMode mode) {
  for (const DisfluentSentence& s : items) {
    TokenLabelSequence seq = token_labels(s, mode);
    for (size_t i = 0; i < seq.tokens.size(); ++i)
      out << seq.tokens[i].surface << '\t'
          << (seq.labels[i] == TokenLabel::Disfluent ? 'D' : 'O') << '\n';
    out << '\n';
  }
}

/// Disfluent TAB fluent, one pair per line.
inline void write_pairs(std::ostream& out, const std::vector<DisfluentSentence>& items) {
  for (const DisfluentSentence& s : items) {
    auto [disfluent, fluent] = to_translation_pair(s);
    out << disfluent << '\t' << fluent << '\n';
  }
}

}  // namespace lard
