// lard: synthesize annotated artificial speech disfluencies from fluent text.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lard/embedding.hpp"
#include "lard/generate.hpp"
#include "lard/io.hpp"
#include "lard/lexicon.hpp"
#include "lard/remote.hpp"
#include "lard/text.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fnv1a64_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw lard::MissingFile(path.string());
  uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

std::string iso_timestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

fs::path resource_default(const std::string& name) {
  if (const char* dir = std::getenv("LARD_RESOURCES")) return fs::path(dir) / name;
  return {};
}

/// "rep=100,repl=50,res=10" (any subset, also accepts full kind names).
lard::Counts parse_counts(const std::string& spec) {
  lard::Counts counts;
  std::istringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    auto eq = part.find('=');
    if (eq == std::string::npos) throw lard::Error("bad --counts entry: " + part);
    std::string key = part.substr(0, eq);
    size_t value = std::stoull(part.substr(eq + 1));
    if (key == "rep" || key == "repetition")
      counts.repetition = value;
    else if (key == "repl" || key == "replacement")
      counts.replacement = value;
    else if (key == "res" || key == "restart")
      counts.restart = value;
    else
      throw lard::Error("unknown kind in --counts: " + key);
  }
  return counts;
}

std::array<double, 3> parse_weights(const std::string& spec, const char* flag) {
  std::array<double, 3> w{};
  std::istringstream ss(spec);
  std::string part;
  size_t i = 0;
  while (std::getline(ss, part, ',') && i < 3) w[i++] = std::stod(part);
  if (i != 3) throw lard::Error(std::string(flag) + " needs three comma-separated values");
  return w;
}

struct GenerateOptions {
  std::string input;
  std::string format = "plain";
  std::string out;
  std::string tags_out, pairs_out;
  std::string counts = "rep=100,repl=100,res=50";
  std::string degree_weights = "1,1,1";
  std::string pos_weights = "1,1,1";
  std::string embedder;  // static=PATH | http=URL
  std::string lexicon, cues, connectives, stopwords;
  std::string interregnum_mode = "keep";
  uint64_t seed = 0;
  size_t num_hyponyms = 10;
  double cue_prob = 0.5;
  size_t context_max = 3;
  size_t restart_prefix_max = 0;
  size_t threads = 1;
  size_t retry_budget = 20;
};

int run_generate(const GenerateOptions& opt) {
  lard::GenerationConfig config;
  config.counts = parse_counts(opt.counts);
  config.degree_weights = parse_weights(opt.degree_weights, "--degree-weights");
  config.pos_weights = parse_weights(opt.pos_weights, "--pos-weights");
  config.num_hyponyms = opt.num_hyponyms;
  config.cue_probability = opt.cue_prob;
  config.context_max = std::min<size_t>(opt.context_max, 3);
  config.restart_prefix_max = opt.restart_prefix_max;
  config.retry_budget = opt.retry_budget;
  config.seed = opt.seed;

  fs::path lexicon_dir =
      opt.lexicon.empty() ? resource_default("wordnet-mini") : fs::path(opt.lexicon);
  fs::path cues_path = opt.cues.empty() ? resource_default("cues.txt") : fs::path(opt.cues);
  fs::path connectives_path = opt.connectives.empty() ? resource_default("connectives.txt")
                                                      : fs::path(opt.connectives);
  fs::path stopwords_path =
      opt.stopwords.empty() ? resource_default("stopwords.txt") : fs::path(opt.stopwords);
  if (lexicon_dir.empty())
    throw lard::Error("no lexicon: pass --lexicon or set LARD_RESOURCES");

  lard::Resources res;
  lard::Lexicon lexicon = lard::Lexicon::load(lexicon_dir);
  res.lexicon = &lexicon;
  if (!cues_path.empty()) res.cues = lard::CueList::load(cues_path);
  if (!connectives_path.empty()) res.connectives = lard::ConnectiveList::load(connectives_path);
  if (!stopwords_path.empty()) res.stopwords = lard::load_stopwords(stopwords_path);

  std::unique_ptr<lard::Embedder> embedder;
  fs::path vectors_path;
  std::string embedder_spec = opt.embedder;
  if (embedder_spec.empty()) {
    fs::path fallback = resource_default("vectors-mini.txt");
    if (!fallback.empty()) embedder_spec = "static=" + fallback.string();
  }
  if (embedder_spec.starts_with("static=")) {
    vectors_path = embedder_spec.substr(7);
    embedder = std::make_unique<lard::StaticEmbedder>(lard::StaticEmbedder::load(vectors_path));
  } else if (embedder_spec.starts_with("http=")) {
    embedder = std::make_unique<lard::HttpEmbedder>(
        lard::HttpEmbedder::from_url(embedder_spec.substr(5)));
  } else {
    throw lard::Error("--embedder must be static=PATH or http=URL (or set LARD_RESOURCES)");
  }
  res.embedder = embedder.get();

  std::ifstream in(opt.input);
  if (!in) throw lard::MissingFile(opt.input);
  auto corpus = lard::load_corpus(
      in, opt.format == "jsonl" ? lard::CorpusFormat::JsonLines : lard::CorpusFormat::PlainLines,
      opt.input);

  // route corpus to the per-algorithm subsets in proportion to the requested counts
  double total = static_cast<double>(std::max<size_t>(config.counts.total(), 1));
  std::array<double, 3> weights = {config.counts.repetition / total,
                                   config.counts.replacement / total,
                                   config.counts.restart / total};
  lard::CorpusPartition part = lard::partition(std::move(corpus), weights, config.seed);

  auto [items, report] = lard::generate_batch(part, config, res, std::max<size_t>(opt.threads, 1));

  {
    std::ofstream out(opt.out, std::ios::binary);
    if (!out) throw lard::Error("cannot write " + opt.out);
    lard::write_jsonl(out, items);
  }
  if (!opt.tags_out.empty()) {
    std::ofstream out(opt.tags_out, std::ios::binary);
    lard::write_tagging(out, items,
                        opt.interregnum_mode == "drop" ? lard::InterregnumMode::Drop
                                                       : lard::InterregnumMode::Keep);
  }
  if (!opt.pairs_out.empty()) {
    std::ofstream out(opt.pairs_out, std::ios::binary);
    lard::write_pairs(out, items);
  }

  json manifest;
  manifest["tool"] = {{"name", "lard"}, {"version", kVersion}};
  manifest["timestamp"] = iso_timestamp();
  manifest["config"] = {{"counts",
                         {{"repetition", config.counts.repetition},
                          {"replacement", config.counts.replacement},
                          {"restart", config.counts.restart}}},
                        {"degree_weights", config.degree_weights},
                        {"pos_weights", config.pos_weights},
                        {"num_hyponyms", config.num_hyponyms},
                        {"cue_probability", config.cue_probability},
                        {"context_max", config.context_max},
                        {"restart_prefix_max", config.restart_prefix_max},
                        {"retry_budget", config.retry_budget},
                        {"seed", config.seed},
                        {"threads", opt.threads},
                        {"interregnum_mode", opt.interregnum_mode}};
  json digests;
  digests["input"] = fnv1a64_file(opt.input);
  for (const char* f : {"noun", "verb", "adj"}) {
    digests[std::string("lexicon.data.") + f] = fnv1a64_file(lexicon_dir / (std::string("data.") + f));
    digests[std::string("lexicon.index.") + f] =
        fnv1a64_file(lexicon_dir / (std::string("index.") + f));
  }
  if (!vectors_path.empty()) digests["vectors"] = fnv1a64_file(vectors_path);
  if (!cues_path.empty()) digests["cues"] = fnv1a64_file(cues_path);
  if (!connectives_path.empty()) digests["connectives"] = fnv1a64_file(connectives_path);
  if (!stopwords_path.empty()) digests["stopwords"] = fnv1a64_file(stopwords_path);
  manifest["resource_digests"] = digests;

  std::ofstream(opt.out + ".manifest.json") << manifest.dump(2) << '\n';
  std::ofstream(opt.out + ".report.json") << report.to_json().dump(2) << '\n';
  std::cerr << "wrote " << items.size() << " records to " << opt.out << '\n';
  return 0;
}

int run_stats(const std::string& input, const std::string& fluent_file, size_t fluent_count) {
  std::ifstream in(input);
  if (!in) throw lard::MissingFile(input);
  auto items = lard::read_jsonl(in);

  size_t fluent = fluent_count;
  if (!fluent_file.empty()) {
    std::ifstream fin(fluent_file);
    if (!fin) throw lard::MissingFile(fluent_file);
    std::string line;
    while (std::getline(fin, line))
      if (line.find_first_not_of(" \t\r") != std::string::npos) ++fluent;
  }

  size_t tokens_total = 0, tokens_disfluent = 0;
  std::map<std::string, size_t> per_kind, per_subclass;
  for (const auto& s : items) {
    per_kind[lard::kind_name(s.annotation.kind)]++;
    per_subclass[s.annotation.subclass]++;
    auto labels = lard::token_labels(s, lard::InterregnumMode::Keep);
    tokens_total += labels.labels.size();
    for (auto l : labels.labels)
      if (l == lard::TokenLabel::Disfluent) ++tokens_disfluent;
  }
  size_t sentences_total = items.size() + fluent;

  json out;
  out["sentences"] = {{"disfluent", items.size()},
                      {"fluent", fluent},
                      {"total", sentences_total},
                      {"disfluent_ratio",
                       sentences_total ? static_cast<double>(items.size()) / sentences_total : 0.0}};
  out["tokens"] = {{"total", tokens_total},
                   {"disfluent", tokens_disfluent},
                   {"disfluent_ratio",
                    tokens_total ? static_cast<double>(tokens_disfluent) / tokens_total : 0.0}};
  out["per_kind"] = per_kind;
  out["per_subclass"] = per_subclass;
  std::cout << out.dump(2) << '\n';
  return 0;
}

/// Re-checks every structural invariant the generators promise.
std::string check_record(const lard::DisfluentSentence& s, const lard::CueList& cues,
                         const lard::ConnectiveList& connectives) {
  std::string issue = lard::check_annotation(s);
  if (!issue.empty()) return issue;
  const auto& a = s.annotation;

  auto folded_span = [&](const lard::Span& span) {
    std::string out;
    for (size_t i = span.start; i < span.end; ++i) {
      if (!out.empty()) out += ' ';
      out += s.tokens[i].folded;
    }
    return out;
  };

  switch (a.kind) {
    case lard::Kind::Repetition: {
      size_t degree = a.reparandum.length();
      if (degree < 1 || degree > 3) return "repetition degree out of range";
      if (folded_span(a.reparandum) != folded_span(*a.repair))
        return "repetition spans differ case-folded";
      for (size_t i = a.reparandum.start; i < a.repair->end; ++i)
        if (s.tokens[i].is_punct) return "punctuation inside repetition span";
      break;
    }
    case lard::Kind::Replacement: {
      size_t d_r = a.repair->length() - 1;
      if (a.reparandum.length() <= d_r) return "replacement reparandum shorter than its context";
      size_t lemma_words = a.reparandum.length() - d_r;
      if (lemma_words < 1 || lemma_words > 4) return "reparandum lemma not 1-4 words";
      for (size_t k = 0; k < d_r; ++k)
        if (s.tokens[a.reparandum.start + k].folded != s.tokens[a.repair->start + k].folded)
          return "context tokens before reparandum and repair differ";
      if (folded_span(a.reparandum) == folded_span(*a.repair))
        return "replacement degenerated into a repetition";
      if (a.interregnum && !cues.contains_folded(folded_span(*a.interregnum)))
        return "interregnum phrase not in cue list";
      break;
    }
    case lard::Kind::Restart: {
      std::span<const lard::Token> prefix{s.tokens.data(), a.reparandum.end};
      std::span<const lard::Token> cont{s.tokens.data() + a.reparandum.end,
                                        s.tokens.size() - a.reparandum.end};
      std::string junction = lard::restart_junction_issue(prefix, cont, connectives);
      if (!junction.empty()) return junction;
      break;
    }
  }

  // notation round trip: strip markers and re-tokenize
  std::string notation = lard::render_notation(s);
  std::string stripped;
  for (char c : notation)
    if (c != '[' && c != ']' && c != '{' && c != '}')
      stripped += c;
  // drop the standalone interruption-point markers
  std::vector<lard::Token> retok;
  for (const auto& t : lard::tokenize(stripped))
    if (t.surface != "+") retok.push_back(t);
  if (retok.size() != s.tokens.size()) return "notation does not round-trip";
  for (size_t i = 0; i < retok.size(); ++i)
    if (retok[i].surface != s.tokens[i].surface) return "notation does not round-trip";

  if (lard::reconstruct_fluent(s).empty()) return "reconstruction is empty";
  return {};
}

int run_validate(const std::string& input, const std::string& cues_file,
                 const std::string& connectives_file) {
  std::ifstream in(input);
  if (!in) throw lard::MissingFile(input);
  auto items = lard::read_jsonl(in);

  fs::path cues_path = cues_file.empty() ? resource_default("cues.txt") : fs::path(cues_file);
  fs::path conn_path =
      connectives_file.empty() ? resource_default("connectives.txt") : fs::path(connectives_file);
  lard::CueList cues = cues_path.empty() ? lard::CueList::defaults() : lard::CueList::load(cues_path);
  lard::ConnectiveList connectives =
      conn_path.empty() ? lard::ConnectiveList::defaults() : lard::ConnectiveList::load(conn_path);

  size_t violations = 0;
  for (const auto& s : items) {
    std::string issue = check_record(s, cues, connectives);
    if (!issue.empty()) {
      if (++violations <= 20) std::cerr << s.id << ": " << issue << '\n';
    }
  }
  std::cout << "checked " << items.size() << " records, " << violations << " violation(s)\n";
  return violations == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Annotated artificial disfluency generator"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  GenerateOptions gen;
  CLI::App* generate = app.add_subcommand("generate", "Generate a disfluent corpus");
  generate->add_option("--input", gen.input, "Fluent corpus file")->required();
  generate->add_option("--format", gen.format, "Input format: plain | jsonl")
      ->check(CLI::IsMember({"plain", "jsonl"}));
  generate->add_option("--out", gen.out, "Output JSONL path")->required();
  generate->add_option("--tags-out", gen.tags_out, "Token/label TSV output");
  generate->add_option("--pairs-out", gen.pairs_out, "Disfluent/fluent pairs TSV output");
  generate->add_option("--counts", gen.counts, "Requested counts, e.g. rep=100,repl=100,res=50");
  generate->add_option("--seed", gen.seed, "Batch seed");
  generate->add_option("--degree-weights", gen.degree_weights, "Weights over degrees 1,2,3");
  generate->add_option("--pos-weights", gen.pos_weights, "Weights over noun,verb,adjective");
  generate->add_option("--num-hyponyms", gen.num_hyponyms, "Hyponyms per hypernym (N)");
  generate->add_option("--cue-prob", gen.cue_prob, "Interregnum probability")
      ->check(CLI::Range(0.0, 1.0));
  generate->add_option("--context-max", gen.context_max, "Max d_r context tokens (0-3)");
  generate->add_option("--restart-prefix-max", gen.restart_prefix_max,
                       "Restart prefix cap (0 = unbounded)");
  generate->add_option("--embedder", gen.embedder, "static=PATH or http=URL");
  generate->add_option("--lexicon", gen.lexicon, "WordNet-format database directory");
  generate->add_option("--cues", gen.cues, "Cue phrase file");
  generate->add_option("--connectives", gen.connectives, "Connective file");
  generate->add_option("--stopwords", gen.stopwords, "Stopword file");
  generate->add_option("--interregnum-mode", gen.interregnum_mode, "keep | drop (tagging export)")
      ->check(CLI::IsMember({"keep", "drop"}));
  generate->add_option("--threads", gen.threads, "Worker threads");
  generate->add_option("--retry-budget", gen.retry_budget, "Per-item retry budget");

  std::string stats_input, stats_fluent_file;
  size_t stats_fluent_count = 0;
  CLI::App* stats = app.add_subcommand("stats", "Report corpus statistics");
  stats->add_option("--input", stats_input, "Generated JSONL")->required();
  stats->add_option("--fluent", stats_fluent_file, "Fluent corpus counted into the ratio");
  stats->add_option("--fluent-count", stats_fluent_count, "Fluent sentence count");

  std::string val_input, val_cues, val_connectives;
  CLI::App* validate = app.add_subcommand("validate", "Check every invariant of a JSONL corpus");
  validate->add_option("--input", val_input, "Generated JSONL")->required();
  validate->add_option("--cues", val_cues, "Cue phrase file");
  validate->add_option("--connectives", val_connectives, "Connective file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) return run_generate(gen);
    if (stats->parsed()) return run_stats(stats_input, stats_fluent_file, stats_fluent_count);
    return run_validate(val_input, val_cues, val_connectives);
  } catch (const std::exception& e) {
    json err = {{"error", typeid(e).name()}, {"message", e.what()}};
    std::cerr << err.dump() << '\n';
    return 1;
  }
}
