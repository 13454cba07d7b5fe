#pragma once

#include <string>
#include <vector>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "lard/embedding.hpp"

namespace lard {

/// Remote embedding service client: POST /embed {"texts": [...]} ->
/// {"vectors": [[...], ...]}. Responses are index-matched to the request, so
/// results never depend on arrival order. Any HTTP status >= 400 maps to
/// ServiceUnavailable.
class HttpEmbedder : public Embedder {
 public:
  HttpEmbedder(const std::string& host, int port, int timeout_seconds = 10)
      : client_(host, port) {
    client_.set_read_timeout(timeout_seconds, 0);
    client_.set_connection_timeout(timeout_seconds, 0);
  }

  /// Accepts "http://host:port" or "host:port".
  static HttpEmbedder from_url(std::string url, int timeout_seconds = 10) {
    if (url.starts_with("http://")) url = url.substr(7);
    if (!url.empty() && url.back() == '/') url.pop_back();
    auto colon = url.rfind(':');
    int port = 80;
    std::string host = url;
    if (colon != std::string::npos) {
      host = url.substr(0, colon);
      port = std::stoi(url.substr(colon + 1));
    }
    return HttpEmbedder(host, port, timeout_seconds);
  }

  size_t dim() const override { return dim_; }

  std::vector<std::optional<Vec>> embed_batch(
      const std::vector<std::vector<Token>>& sentences) override {
    nlohmann::json body;
    body["texts"] = nlohmann::json::array();
    for (const auto& tokens : sentences) body["texts"].push_back(detokenize(tokens));

    auto res = client_.Post("/embed", body.dump(), "application/json");
    if (!res) {
      if (res.error() == httplib::Error::ConnectionTimeout ||
          res.error() == httplib::Error::Read)
        throw ServiceUnavailable("timeout");
      throw ServiceUnavailable(httplib::to_string(res.error()));
    }
    if (res->status >= 400) throw ServiceUnavailable("HTTP " + std::to_string(res->status));

    nlohmann::json reply = nlohmann::json::parse(res->body, nullptr, false);
    if (reply.is_discarded() || !reply.contains("vectors") ||
        reply["vectors"].size() != sentences.size())
      throw ServiceUnavailable("malformed response");

    std::vector<std::optional<Vec>> out;
    for (const auto& jv : reply["vectors"]) {
      if (jv.is_null() || jv.empty()) {
        out.push_back(std::nullopt);
        continue;
      }
      Vec v = jv.get<Vec>();
      if (dim_ == 0) dim_ = v.size();
      out.push_back(std::move(v));
    }
    return out;
  }

 private:
  httplib::Client client_;
  size_t dim_ = 0;
};

}  // namespace lard
