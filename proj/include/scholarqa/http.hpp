#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <string>

namespace sqa {

struct HttpResponse {
  int status = 0;
  std::string body;
};

/// Minimal transport seam so tests can count or fail requests.
class HttpTransport {
 public:
  virtual ~HttpTransport() = default;

  virtual HttpResponse post(const std::string& url,
                            const std::map<std::string, std::string>& headers,
                            const std::string& body,
                            const std::string& content_type,
                            std::chrono::seconds timeout) = 0;

  virtual HttpResponse get(const std::string& url,
                           const std::map<std::string, std::string>& headers,
                           std::chrono::seconds timeout) = 0;
};

/// Default transport backed by cpp-httplib. Thread-safe; one connection
/// per call.
std::shared_ptr<HttpTransport> make_default_transport();

}  // namespace sqa
