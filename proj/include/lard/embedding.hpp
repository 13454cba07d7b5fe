#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "lard/errors.hpp"
#include "lard/text.hpp"

namespace lard {

using Vec = std::vector<double>;

/// Cosine similarity dot(x,y) / (|x||y|).
inline double cosine(const Vec& x, const Vec& y) {
  if (x.size() != y.size()) throw DimensionMismatch(x.size(), y.size());
  double dot = 0.0, nx = 0.0, ny = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    dot += x[i] * y[i];
    nx += x[i] * x[i];
    ny += y[i] * y[i];
  }
  if (nx == 0.0 || ny == 0.0) throw ZeroNorm();
  return dot / (std::sqrt(nx) * std::sqrt(ny));
}

/// Sentence embedding provider. Batch results are index-matched to the
/// request so callers never depend on completion order; nullopt marks a
/// sentence that could not be embedded.
class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual size_t dim() const = 0;
  virtual std::vector<std::optional<Vec>> embed_batch(
      const std::vector<std::vector<Token>>& sentences) = 0;

  Vec embed(const std::vector<Token>& tokens) {
    auto out = embed_batch({tokens});
    if (!out[0]) throw AllTokensOov();
    return std::move(*out[0]);
  }
};

/// Static word vectors in text format: one "token v1 ... vd" entry per line,
/// optional "count dim" header. The sentence vector is the arithmetic mean of
/// the per-token vectors (folded surfaces); OOV tokens are skipped.
class StaticEmbedder : public Embedder {
 public:
  static StaticEmbedder load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw MissingFile(path.string());
    StaticEmbedder emb;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      std::istringstream ls(line);
      std::string token;
      ls >> token;
      Vec v;
      double x;
      while (ls >> x) v.push_back(x);
      if (line_no == 1 && v.size() == 1 && token.find_first_not_of("0123456789") ==
                                               std::string::npos) {
        emb.dim_ = static_cast<size_t>(v[0]);  // "count dim" header
        continue;
      }
      if (v.empty()) throw MalformedRecord(line_no, "vector entry with no values");
      if (emb.dim_ == 0) emb.dim_ = v.size();
      if (v.size() != emb.dim_)
        throw MalformedRecord(line_no, "inconsistent vector dimension");
      emb.vectors_.emplace(case_fold(token), std::move(v));
    }
    return emb;
  }

  size_t dim() const override { return dim_; }

  std::vector<std::optional<Vec>> embed_batch(
      const std::vector<std::vector<Token>>& sentences) override {
    std::vector<std::optional<Vec>> out;
    out.reserve(sentences.size());
    for (const auto& tokens : sentences) out.push_back(mean_vector(tokens));
    return out;
  }

  bool contains(std::string_view word) const { return vectors_.contains(case_fold(word)); }

 private:
  std::optional<Vec> mean_vector(const std::vector<Token>& tokens) const {
    Vec sum(dim_, 0.0);
    size_t found = 0;
    for (const Token& t : tokens) {
      auto it = vectors_.find(t.folded);
      if (it == vectors_.end()) continue;
      for (size_t i = 0; i < dim_; ++i) sum[i] += it->second[i];
      ++found;
    }
    if (found == 0) return std::nullopt;
    for (double& x : sum) x /= static_cast<double>(found);
    return sum;
  }

  size_t dim_ = 0;
  std::unordered_map<std::string, Vec> vectors_;
};

/// One reparandum candidate: the hyponym lemma and the source sentence with
/// the repair word substituted by it.
struct Candidate {
  std::string lemma;
  std::vector<Token> tokens;
};

struct Selection {
  size_t index = 0;  // position in the candidate list
  std::string lemma;
  double score = 0.0;
};

/// Argmax of cosine(embed(original), embed(candidate)) over the candidates
/// that embed successfully; ties go to the earliest candidate.
inline Selection select_reparandum(Embedder& embedder, const std::vector<Token>& original,
                                   std::span<const Candidate> candidates) {
  if (candidates.empty()) throw NoScorableCandidate();
  std::vector<std::vector<Token>> batch;
  batch.reserve(candidates.size() + 1);
  batch.push_back(original);
  for (const Candidate& c : candidates) batch.push_back(c.tokens);
  auto vectors = embedder.embed_batch(batch);
  if (!vectors[0]) throw AllTokensOov();

  std::optional<Selection> best;
  for (size_t i = 0; i < candidates.size(); ++i) {
    if (!vectors[i + 1]) continue;
    double score = cosine(*vectors[0], *vectors[i + 1]);
    if (!best || score > best->score) best = Selection{i, candidates[i].lemma, score};
  }
  if (!best) throw NoScorableCandidate();
  return *best;
}

}  // namespace lard
