#pragma once

// Synthetic fluent corpus used by the generator tests and the acceptance
// suite. Every content word is covered by the bundled mini lexicon and the
// vectors-mini.txt vocabulary.

#include <string>
#include <vector>

#include "lard/rng.hpp"
#include "lard/text.hpp"

namespace lard_test {

inline const std::vector<std::string>& nouns() {
  static const std::vector<std::string> v = {
      "pancakes", "cheesecake", "doughnut", "brownie", "coffee", "tea",     "juice",
      "car",      "truck",      "bicycle",  "dog",     "cat",    "horse",   "house",
      "school",   "library",    "dress",    "shirt",   "coat",   "apple",   "banana",
      "orange",   "guitar",     "piano",    "violin",  "table",  "chair",   "desk",
      "rose",     "tulip",      "hammer",   "drill",   "novel",  "atlas",   "chess",
      "tennis",   "sprint",     "marathon", "lunch",   "dinner", "brownie", "grape"};
  return v;
}

inline const std::vector<std::string>& verbs() {
  static const std::vector<std::string> v = {"walk", "jump",  "crawl", "talk",  "speak", "shout",
                                             "eat",  "drink", "taste", "build", "cook",  "bake",
                                             "paint", "draw", "watch", "listen", "enjoy", "prefer"};
  return v;
}

inline const std::vector<std::string>& adjectives() {
  static const std::vector<std::string> v = {"big",   "large", "huge",   "small", "tiny",
                                             "happy", "glad",  "cheerful", "fast", "quick",
                                             "cold",  "chilly", "new",    "fresh", "pretty",
                                             "lovely", "modern", "compact"};
  return v;
}

inline const std::vector<std::string>& weekdays() {
  static const std::vector<std::string> v = {"Monday", "Tuesday", "Wednesday", "Thursday",
                                             "Friday"};
  return v;
}

/// One fluent sentence drawn from a small set of templates.
inline std::string fluent_text(lard::Rng& rng) {
  auto pick = [&](const std::vector<std::string>& pool) {
    return pool[rng.uniform(pool.size())];
  };
  switch (rng.uniform(10)) {
    case 0: return "I would like to eat " + pick(nouns()) + " for breakfast";
    case 1: return "Can we meet on " + pick(weekdays()) + " ?";
    case 2: return "The " + pick(adjectives()) + " " + pick(nouns()) + " can " + pick(verbs()) +
                   " very often .";
    case 3: return "We want to " + pick(verbs()) + " the " + pick(adjectives()) + " " +
                   pick(nouns()) + " .";
    case 4: return "My " + pick(nouns()) + " is really " + pick(adjectives()) + " today .";
    case 5: return "They will " + pick(verbs()) + " a " + pick(nouns()) + " later .";
    case 6: return "He said the " + pick(nouns()) + " was " + pick(adjectives()) + " .";
    case 7: return "You should " + pick(verbs()) + " this " + pick(adjectives()) + " " +
                   pick(nouns()) + " tomorrow .";
    case 8: return "I think they " + pick(verbs()) + " near the " + pick(nouns()) + " .";
    default: return "She wants a " + pick(adjectives()) + " " + pick(nouns()) + " from the " +
                    pick(nouns()) + " .";
  }
}

inline std::vector<lard::FluentSentence> make_fluent_corpus(size_t n, uint64_t seed) {
  lard::Rng rng(seed);
  std::vector<lard::FluentSentence> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    lard::FluentSentence s;
    s.id = std::to_string(i);
    s.tokens = lard::tokenize(fluent_text(rng));
    s.source = "synthetic";
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace lard_test
