#include "scholarqa/client.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <sstream>
#include <thread>

#include "scholarqa/errors.hpp"

namespace sqa {

namespace {

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

std::string url_encode(const std::string& s) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  out.reserve(s.size() * 3);
  for (unsigned char c : s) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else if (c == ' ') {
      out.push_back('+');
    } else {
      out.push_back('%');
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 0xf]);
    }
  }
  return out;
}

}  // namespace

std::string cache_key(const SparqlQuery& query) {
  // Length-prefix the endpoint so (endpoint, text) pairs cannot collide
  // by shifting bytes between the two fields.
  return sha256_hex(std::to_string(query.endpoint.size()) + ":" +
                    query.endpoint + "\n" + query.text);
}

QueryCache::QueryCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::optional<std::string> QueryCache::get(const std::string& key) const {
  std::ifstream in(dir_ / (key + ".json"), std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void QueryCache::put(const std::string& key, const std::string& body) {
  std::lock_guard lock(write_mutex_);
  auto tmp = dir_ / (key + ".tmp");
  auto final_path = dir_ / (key + ".json");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << body;
  }
  std::filesystem::rename(tmp, final_path);
}

SparqlClient::SparqlClient(std::shared_ptr<HttpTransport> transport,
                           std::shared_ptr<QueryCache> cache,
                           RetryPolicy policy, bool offline, bool bypass_cache)
    : transport_(std::move(transport)),
      cache_(std::move(cache)),
      policy_(policy),
      offline_(offline),
      bypass_cache_(bypass_cache) {}

ResultSet SparqlClient::execute(const SparqlQuery& query) const {
  if (query.text.empty()) {
    throw Error(ErrorKind::BadConfig, "empty SPARQL query");
  }

  const std::string key = cache_key(query);
  if (cache_ && !bypass_cache_) {
    if (auto cached = cache_->get(key)) {
      return parse_results_json(*cached);
    }
  }
  if (offline_) {
    throw Error(ErrorKind::Disabled,
                "offline mode and no cached response for " + query.endpoint);
  }

  const std::map<std::string, std::string> headers{
      {"Accept", "application/sparql-results+json"}};
  const std::string body = "query=" + url_encode(query.text);

  Error last_error(ErrorKind::NetworkError, "no attempt made");
  auto backoff = policy_.initial_backoff;
  for (int attempt = 0; attempt < policy_.attempts; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    try {
      HttpResponse res =
          transport_->post(query.endpoint, headers, body,
                           "application/x-www-form-urlencoded", policy_.timeout);
      if (res.status < 200 || res.status >= 300) {
        last_error = Error(ErrorKind::HttpError,
                           "status " + std::to_string(res.status) + " from " +
                               query.endpoint);
        // 4xx will not change on retry.
        if (res.status >= 400 && res.status < 500) throw last_error;
        continue;
      }
      ResultSet rs = parse_results_json(res.body);
      if (cache_) cache_->put(key, res.body);
      return rs;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::MalformedResults ||
          e.kind() == ErrorKind::HttpError || e.kind() == ErrorKind::BadConfig) {
        throw;
      }
      last_error = e;
    }
  }
  throw last_error;
}

}  // namespace sqa
