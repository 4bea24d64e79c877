#pragma once

#include <chrono>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "scholarqa/http.hpp"
#include "scholarqa/sparql.hpp"

namespace sqa {

/// Content-addressed cache keyed by cache_key(); one file per digest.
/// Writes to a key are serialized, reads are lock-free after creation.
class QueryCache {
 public:
  explicit QueryCache(std::filesystem::path dir);

  std::optional<std::string> get(const std::string& key) const;
  void put(const std::string& key, const std::string& body);

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  mutable std::mutex write_mutex_;
};

/// SHA-256 over endpoint and query text; equal inputs give equal digests.
std::string cache_key(const SparqlQuery& query);

struct RetryPolicy {
  int attempts = 3;
  std::chrono::milliseconds initial_backoff{1000};
  std::chrono::seconds timeout{30};
};

/// SPARQL 1.1 protocol client: POST with
/// Accept: application/sparql-results+json, bounded retries, optional
/// response cache. Offline mode forbids network and requires cache hits.
class SparqlClient {
 public:
  SparqlClient(std::shared_ptr<HttpTransport> transport,
               std::shared_ptr<QueryCache> cache = nullptr,
               RetryPolicy policy = {}, bool offline = false,
               bool bypass_cache = false);

  ResultSet execute(const SparqlQuery& query) const;

 private:
  std::shared_ptr<HttpTransport> transport_;
  std::shared_ptr<QueryCache> cache_;
  RetryPolicy policy_;
  bool offline_;
  bool bypass_cache_;
};

}  // namespace sqa
