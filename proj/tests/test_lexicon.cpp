#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "lard/lexicon.hpp"
#include "lard/rng.hpp"

using namespace lard;
namespace fs = std::filesystem;

namespace {

const fs::path kDataDir = LARD_DATA_DIR;

const Lexicon& fixture() {
  static Lexicon lex = Lexicon::load(kDataDir / "wordnet-mini");
  return lex;
}

bool has_lemma(const Lexicon& lex, SynsetId id, const std::string& lemma) {
  const auto& lemmas = lex.synset(id).lemmas;
  return std::find(lemmas.begin(), lemmas.end(), lemma) != lemmas.end();
}

}  // namespace

TEST_CASE("load_lexicon reads the WordNet-format fixture") {
  const Lexicon& lex = fixture();
  CHECK(lex.synset_count(Pos::Noun) > 0);
  CHECK(lex.synset_count(Pos::Verb) > 0);
  CHECK(lex.synset_count(Pos::Adjective) > 0);
}

TEST_CASE("load_lexicon error paths") {
  fs::path tmp = fs::temp_directory_path() / "lard-lexicon-test";
  fs::remove_all(tmp);
  fs::create_directories(tmp);
  for (const char* f : {"data.noun", "index.noun", "data.adj", "index.adj", "index.verb"})
    fs::copy_file(kDataDir / "wordnet-mini" / f, tmp / f);
  // data.verb missing
  CHECK_THROWS_AS(Lexicon::load(tmp), MissingFile);

  // truncated data file
  {
    std::ifstream in(kDataDir / "wordnet-mini" / "data.verb");
    std::ofstream out(tmp / "data.verb");
    std::string line;
    while (std::getline(in, line)) out << line << '\n';
    out << "00009999 30 v 02 chopped 0\n";  // word list cut short
  }
  CHECK_THROWS_AS(Lexicon::load(tmp), ParseError);
  fs::remove_all(tmp);
}

TEST_CASE("pos_tags uses lexicon membership with lemmatization") {
  const Lexicon& lex = fixture();
  CHECK(lex.pos_tags("pancakes") == std::set<Pos>{Pos::Noun});
  CHECK(lex.pos_tags(".").empty());
  CHECK(lex.pos_tags("run") == std::set<Pos>{Pos::Noun, Pos::Verb});
  CHECK(lex.pos_tags("happy") == std::set<Pos>{Pos::Adjective});
  CHECK(lex.pos_tags("qzqzqz").empty());
}

TEST_CASE("lemmatize strips simple inflections") {
  const Lexicon& lex = fixture();
  CHECK(lex.lemmatize("pancakes", Pos::Noun) == "pancake");
  CHECK(lex.lemmatize("dresses", Pos::Noun) == "dress");
  CHECK(lex.lemmatize("baking", Pos::Verb) == "bake");
  CHECK(lex.lemmatize("walked", Pos::Verb) == "walk");
  CHECK_FALSE(lex.lemmatize("pancakes", Pos::Verb).has_value());
}

TEST_CASE("hypernyms pools all senses") {
  const Lexicon& lex = fixture();
  auto ups = lex.hypernyms("pancake", Pos::Noun);
  REQUIRE(ups.size() == 1);
  CHECK(has_lemma(lex, ups[0], "cake"));

  CHECK_THROWS_AS(lex.hypernyms("qzqzqz", Pos::Noun), WordNotFound);

  // "run" has a noun sense and a verb sense; each pools its own hypernyms
  auto run_n = lex.hypernyms("run", Pos::Noun);
  REQUIRE(run_n.size() == 1);
  CHECK(has_lemma(lex, run_n[0], "race"));
  auto run_v = lex.hypernyms("run", Pos::Verb);
  REQUIRE(run_v.size() == 1);
  CHECK(has_lemma(lex, run_v[0], "move"));

  // adjectives: the similar-to cluster substitutes for hypernyms
  auto big = lex.hypernyms("big", Pos::Adjective);
  CHECK(big.size() == 3);
}

TEST_CASE("hyponym_lemmas excludes the repair candidate and caps length") {
  const Lexicon& lex = fixture();
  SynsetId cake = lex.hypernyms("pancake", Pos::Noun)[0];
  auto hypos = lex.hyponym_lemmas(cake, "pancake", 10);
  std::set<std::string> expect = {"cheesecake", "gingerbread", "doughnut",  "honey cake",
                                  "brownie",    "fruitcake",   "sponge cake"};
  CHECK(std::set<std::string>(hypos.begin(), hypos.end()) == expect);

  auto capped = lex.hyponym_lemmas(cake, "pancake", 3);
  CHECK(capped.size() == 3);

  CHECK_THROWS_AS(lex.hyponym_lemmas(cake, "pancake", 0), Error);
}

TEST_CASE("hyponym_lemmas properties over random synsets") {
  const Lexicon& lex = fixture();
  std::vector<SynsetId> ids;
  for (const auto& [key, syn] : lex.synsets())
    ids.push_back(SynsetId{static_cast<Pos>(key >> 32), static_cast<uint32_t>(key)});
  std::sort(ids.begin(), ids.end(),
            [](SynsetId a, SynsetId b) { return a.key() < b.key(); });

  auto seed = GENERATE(take(100, random(uint64_t{0}, uint64_t{1} << 40)));
  Rng rng(seed);
  SynsetId id = ids[rng.uniform(ids.size())];
  size_t n = 1 + rng.uniform(8);
  const auto& lemmas = lex.synset(id).lemmas;
  std::string exclude = lemmas[rng.uniform(lemmas.size())];

  auto out = lex.hyponym_lemmas(id, exclude, n);
  auto out2 = lex.hyponym_lemmas(id, exclude, n);
  CHECK(out == out2);  // deterministic for a fixed snapshot
  CHECK(out.size() <= n);
  for (const std::string& lemma : out) {
    CHECK(lemma != exclude);
    CHECK(1 + std::count(lemma.begin(), lemma.end(), ' ') <= 4);
    CHECK(lex.indexed(lemma, id.pos));  // returned lemmas are indexed under the POS
  }
}
