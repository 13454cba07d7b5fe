// Acceptance suite. Runs the library and the CLI end to end and prints one
// PASS/FAIL line per criterion. Usage: acceptance <path-to-lard-cli>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "corpus_fixture.hpp"
#include "lard/generate.hpp"
#include "lard/io.hpp"

using namespace lard;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kDataDir = LARD_DATA_DIR;
fs::path g_cli;
fs::path g_tmp;
int g_failures = 0;

void report(int criterion, bool ok, const std::string& what) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": " << what << std::endl;
  if (!ok) ++g_failures;
}

int run(const std::string& args, const fs::path& stdout_to = {}) {
  std::string cmd = g_cli.string() + " " + args;
  if (!stdout_to.empty()) cmd += " > " + stdout_to.string();
  cmd += " 2> " + (g_tmp / "stderr.txt").string();
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_corpus(const fs::path& p, size_t n, uint64_t seed) {
  Rng rng(seed);
  std::ofstream out(p, std::ios::binary);
  for (size_t i = 0; i < n; ++i) out << lard_test::fluent_text(rng) << '\n';
}

Resources& resources() {
  static Lexicon lex = Lexicon::load(kDataDir / "wordnet-mini");
  static StaticEmbedder emb = StaticEmbedder::load(kDataDir / "vectors-mini.txt");
  static Resources res = [] {
    Resources r;
    r.lexicon = &lex;
    r.embedder = &emb;
    r.cues = CueList::load(kDataDir / "cues.txt");
    r.connectives = ConnectiveList::load(kDataDir / "connectives.txt");
    r.stopwords = load_stopwords(kDataDir / "stopwords.txt");
    return r;
  }();
  return res;
}

FluentSentence sent(std::string id, const std::string& text) {
  FluentSentence s;
  s.id = std::move(id);
  s.tokens = tokenize(text);
  return s;
}

std::vector<std::string> folded(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const Token& t : tokens) out.push_back(t.folded);
  return out;
}

std::string resource_flags() {
  return " --lexicon " + (kDataDir / "wordnet-mini").string() +
         " --embedder static=" + (kDataDir / "vectors-mini.txt").string() +
         " --cues " + (kDataDir / "cues.txt").string() +
         " --connectives " + (kDataDir / "connectives.txt").string() +
         " --stopwords " + (kDataDir / "stopwords.txt").string();
}

// -------------------------------------------------------------------------
// 1. pinned single-item constructions come out token-exact
// -------------------------------------------------------------------------
void criterion_1() {
  bool ok = true;
  auto expect = [&](const std::string& got, const std::string& want) {
    if (got != want) {
      std::cout << "  expected: " << want << "\n  got:      " << got << '\n';
      ok = false;
    }
  };

  FluentSentence thanks = sent("a", "Thank you for your help");
  expect(detokenize(apply_repetition(thanks, 1, 2).tokens), "Thank you for for your help");
  expect(render_notation(apply_repetition(thanks, 1, 2)), "Thank you [for + for] your help");
  expect(detokenize(apply_repetition(thanks, 2, 0).tokens),
         "Thank you thank you for your help");

  FluentSentence eats = sent("b", "I would like to eat pancakes for breakfast");
  std::vector<Token> cue = tokenize("no");
  expect(detokenize(apply_replacement(eats, 5, "cheesecake", 0, &cue, Pos::Noun).tokens),
         "I would like to eat cheesecake no pancakes for breakfast");
  expect(render_notation(apply_replacement(eats, 5, "cheesecake", 0, &cue, Pos::Noun)),
         "I would like to eat [cheesecake + {no} pancakes] for breakfast");
  expect(detokenize(apply_replacement(eats, 5, "cheesecake", 2, &cue, Pos::Noun).tokens),
         "I would like to eat cheesecake no to eat pancakes for breakfast");

  FluentSentence meet = sent("c", "Can we meet on Tuesday ?");
  expect(detokenize(apply_restart(eats, 2, meet).tokens), "I would can we meet on Tuesday ?");
  expect(render_notation(apply_restart(eats, 2, meet)),
         "[I would + ] can we meet on Tuesday ?");
  expect(detokenize(reconstruct_fluent(apply_restart(eats, 2, meet))),
         "can we meet on Tuesday ?");

  report(1, ok, "pinned constructions are token-exact");
}

// -------------------------------------------------------------------------
// 2. >= 10,000 generated items all round-trip back to their fluent source;
//    the corpus file is reused by criterion 4
// -------------------------------------------------------------------------
void criterion_2() {
  auto corpus = lard_test::make_fluent_corpus(30000, 424242);
  auto part = lard::partition(corpus, std::array<double, 3>{0.4, 0.3, 0.3}, 11);

  GenerationConfig config;
  config.counts = {4000, 3000, 3000};
  config.seed = 20240817;
  auto [items, rep] = generate_batch(part, config, resources(), 8);

  std::map<std::string, const FluentSentence*> by_id;
  for (const auto* set : {&part.repetition_set, &part.replacement_set, &part.restart_set})
    for (const FluentSentence& s : *set) by_id[s.id] = &s;

  size_t good = 0;
  for (const DisfluentSentence& d : items) {
    const FluentSentence* src = by_id.at(d.provenance.fluent_sources.back());
    if (check_annotation(d).empty() && folded(reconstruct_fluent(d)) == folded(src->tokens))
      ++good;
  }
  std::ofstream out(g_tmp / "fuzz.jsonl", std::ios::binary);
  write_jsonl(out, items);

  std::cout << "  " << good << "/" << items.size() << " round-tripped\n";
  report(2, items.size() >= 10000 && good == items.size(),
         "10,000-item generation fuzz round-trips 100%");
}

// -------------------------------------------------------------------------
// 3. replacement winner and similarity match a brute-force oracle
// -------------------------------------------------------------------------
void criterion_3() {
  const Resources& res = resources();
  GenerationConfig config;

  size_t trials = 0, agree = 0;
  Rng corpus_rng(31337);
  while (trials < 1000) {
    FluentSentence s = sent("o" + std::to_string(trials), lard_test::fluent_text(corpus_rng));
    Pos pos = static_cast<Pos>(corpus_rng.uniform(3));
    Rng rng(mix_seed(8080, trials, static_cast<uint64_t>(pos)));
    DisfluentSentence d;
    try {
      d = gen_replacement(s, pos, config, res, rng);
    } catch (const NoCandidateWord&) {
      continue;
    }
    ++trials;

    size_t repair_idx = d.provenance.params["repair_index"];
    std::string repair_lemma = d.provenance.params["repair_lemma"];
    std::vector<std::string> pool =
        hyponym_pool(*res.lexicon, repair_lemma, pos, config.num_hyponyms);
    Vec original = res.embedder->embed(s.tokens);
    double best = -2.0;
    std::string best_lemma;
    for (const std::string& lemma : pool) {
      std::vector<Token> cand(s.tokens.begin(),
                              s.tokens.begin() + static_cast<long>(repair_idx));
      for (const Token& t : tokenize(lemma)) cand.push_back(t);
      cand.insert(cand.end(), s.tokens.begin() + static_cast<long>(repair_idx + 1),
                  s.tokens.end());
      reindex(cand);
      try {
        double score = cosine(original, res.embedder->embed(cand));
        if (score > best) {
          best = score;
          best_lemma = lemma;
        }
      } catch (const AllTokensOov&) {
      }
    }
    if (d.provenance.params["reparandum_lemma"] == best_lemma &&
        std::abs(double(d.provenance.params["similarity"]) - best) <= 1e-9)
      ++agree;
  }
  std::cout << "  " << agree << "/" << trials << " matched the oracle\n";
  report(3, agree == trials, "1,000 replacements agree with the brute-force oracle");
}

// -------------------------------------------------------------------------
// 4. the validator accepts the criterion-2 output in full
// -------------------------------------------------------------------------
void criterion_4() {
  int rc = run("validate --input " + (g_tmp / "fuzz.jsonl").string() + " --cues " +
               (kDataDir / "cues.txt").string() + " --connectives " +
               (kDataDir / "connectives.txt").string());
  report(4, rc == 0, "validator re-checks every invariant with zero violations");
}

// -------------------------------------------------------------------------
// 5. the two corpus recipes reproduce their published mixture ratios
// -------------------------------------------------------------------------
void criterion_5() {
  bool ok = true;

  // conversational recipe: 17,047 repetitions + 13,987 replacements, with the
  // 82,315 fluent source sentences kept in the released mix -> 27.38% disfluent
  fs::path swb = g_tmp / "swb.txt";
  write_corpus(swb, 82315, 1);
  int rc = run("generate --input " + swb.string() + " --out " + (g_tmp / "swb.jsonl").string() +
               " --counts rep=17047,repl=13987,res=0 --seed 7 --threads 8" + resource_flags());
  if (rc != 0) {
    std::cout << "  generate (conversational) exited " << rc << '\n';
    ok = false;
  } else {
    run("stats --input " + (g_tmp / "swb.jsonl").string() + " --fluent-count 82315",
        g_tmp / "swb-stats.json");
    json stats = json::parse(read_file(g_tmp / "swb-stats.json"));
    double pct = 100.0 * double(stats["sentences"]["disfluent_ratio"]);
    std::cout << "  conversational mix: " << pct << "% disfluent sentences\n";
    if (std::abs(pct - 27.38) > 0.01) ok = false;
    if (stats["per_kind"]["repetition"] != 17047) ok = false;
    if (stats["per_kind"]["replacement"] != 13987) ok = false;
  }

  // question-rewriting recipe: 3,600 replacements + 1,937 restarts from 5,537
  // questions, every output sentence disfluent -> 100%
  fs::path qa = g_tmp / "qa.txt";
  write_corpus(qa, 5537, 2);
  rc = run("generate --input " + qa.string() + " --out " + (g_tmp / "qa.jsonl").string() +
           " --counts rep=0,repl=3600,res=1937 --seed 8 --threads 8" + resource_flags());
  if (rc != 0) {
    std::cout << "  generate (question) exited " << rc << '\n';
    ok = false;
  } else {
    run("stats --input " + (g_tmp / "qa.jsonl").string(), g_tmp / "qa-stats.json");
    json stats = json::parse(read_file(g_tmp / "qa-stats.json"));
    double ratio = stats["sentences"]["disfluent_ratio"];
    std::cout << "  question mix: " << 100.0 * ratio << "% disfluent sentences\n";
    if (ratio != 1.0) ok = false;
    if (stats["per_kind"]["replacement"] != 3600) ok = false;
    if (stats["per_kind"]["restart"] != 1937) ok = false;
  }

  report(5, ok, "corpus recipes hit their mixture ratios");
}

// -------------------------------------------------------------------------
// 6. thread count never changes the bytes on disk
// -------------------------------------------------------------------------
void criterion_6() {
  fs::path qa = g_tmp / "qa.txt";
  int rc = run("generate --input " + qa.string() + " --out " + (g_tmp / "qa-t1.jsonl").string() +
               " --counts rep=0,repl=3600,res=1937 --seed 8 --threads 1" + resource_flags());
  bool ok = rc == 0;
  std::string one = read_file(g_tmp / "qa-t1.jsonl");
  std::string eight = read_file(g_tmp / "qa.jsonl");  // criterion 5 ran with 8 threads
  ok = ok && !one.empty() && one == eight;
  report(6, ok, "--threads 1 and --threads 8 write byte-identical output");
}

// -------------------------------------------------------------------------
// 7. similarity numerics: self-similarity and argmax scale invariance
// -------------------------------------------------------------------------
void criterion_7() {
  Rng rng(271828);
  auto random_vec = [&](size_t d) {
    Vec v(d);
    for (double& x : v) x = rng.real() * 2 - 1 + 1e-3;
    return v;
  };

  bool ok = true;
  for (int i = 0; i < 1000; ++i) {
    Vec v = random_vec(2 + rng.uniform(64));
    if (std::abs(cosine(v, v) - 1.0) > 1e-9) ok = false;
  }

  for (int trial = 0; trial < 1000; ++trial) {
    size_t d = 2 + rng.uniform(16);
    Vec query = random_vec(d);
    std::vector<Vec> cands;
    for (size_t i = 0; i < 2 + rng.uniform(30); ++i) cands.push_back(random_vec(d));

    auto argmax = [&] {
      size_t best = 0;
      double best_score = -2.0;
      for (size_t i = 0; i < cands.size(); ++i) {
        double score = cosine(query, cands[i]);
        if (score > best_score) {
          best_score = score;
          best = i;
        }
      }
      return best;
    };
    size_t before = argmax();
    double scale = 0.01 + rng.real() * 99.99;
    for (double& x : cands[rng.uniform(cands.size())]) x *= scale;
    if (argmax() != before) ok = false;
  }
  report(7, ok, "cosine self-similarity and argmax scale invariance hold");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-lard-cli>\n";
    return 2;
  }
  g_cli = argv[1];
  g_tmp = fs::temp_directory_path() / "lard-acceptance";
  fs::remove_all(g_tmp);
  fs::create_directories(g_tmp);

  try {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
  } catch (const std::exception& e) {
    std::cout << "FAIL unexpected exception: " << e.what() << std::endl;
    return 1;
  }
  return g_failures == 0 ? 0 : 1;
}
