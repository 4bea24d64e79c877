#pragma once

// Socket-free HttpTransport doubles for unit tests, plus URL decoding
// for the SPARQL protocol body.

#include <atomic>
#include <functional>
#include <map>
#include <string>

#include "scholarqa/errors.hpp"
#include "scholarqa/http.hpp"

namespace sqatest {

inline std::string url_decode(const std::string& s) {
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '+') {
      out.push_back(' ');
    } else if (s[i] == '%' && i + 2 < s.size()) {
      out.push_back(static_cast<char>(std::stoi(s.substr(i + 1, 2), nullptr, 16)));
      i += 2;
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

/// Extracts the decoded query from a "query=..." form body.
inline std::string decode_sparql_body(const std::string& body) {
  constexpr const char* prefix = "query=";
  if (body.rfind(prefix, 0) != 0) return "";
  return url_decode(body.substr(6));
}

/// Serves canned SPARQL responses keyed by exact query text.
class MockSparqlTransport : public sqa::HttpTransport {
 public:
  explicit MockSparqlTransport(std::map<std::string, std::string> responses)
      : responses_(std::move(responses)) {}

  sqa::HttpResponse post(const std::string& /*url*/,
                         const std::map<std::string, std::string>& /*headers*/,
                         const std::string& body,
                         const std::string& /*content_type*/,
                         std::chrono::seconds /*timeout*/) override {
    ++post_count;
    const std::string query = decode_sparql_body(body);
    if (auto it = responses_.find(query); it != responses_.end()) {
      return {200, it->second};
    }
    return {404, "no canned response for query:\n" + query};
  }

  sqa::HttpResponse get(const std::string&,
                        const std::map<std::string, std::string>&,
                        std::chrono::seconds) override {
    return {405, ""};
  }

  std::atomic<int> post_count{0};

 private:
  std::map<std::string, std::string> responses_;
};

/// Scripted transport: each post invokes the next handler in the list;
/// the last handler repeats.
class ScriptedTransport : public sqa::HttpTransport {
 public:
  using Handler = std::function<sqa::HttpResponse()>;

  explicit ScriptedTransport(std::vector<Handler> handlers)
      : handlers_(std::move(handlers)) {}

  sqa::HttpResponse post(const std::string&, const std::map<std::string, std::string>&,
                         const std::string&, const std::string&,
                         std::chrono::seconds) override {
    return next();
  }

  sqa::HttpResponse get(const std::string&, const std::map<std::string, std::string>&,
                        std::chrono::seconds) override {
    return next();
  }

  std::atomic<int> calls{0};

 private:
  sqa::HttpResponse next() {
    const size_t i = std::min<size_t>(calls++, handlers_.size() - 1);
    return handlers_[i]();
  }

  std::vector<Handler> handlers_;
};

}  // namespace sqatest
