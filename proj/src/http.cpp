#include "scholarqa/http.hpp"

#include <httplib.h>

#include "scholarqa/errors.hpp"

namespace sqa {

namespace {

struct SplitUrl {
  std::string base;  // scheme://host[:port]
  std::string path;
};

SplitUrl split_url(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorKind::BadConfig, "not an absolute http(s) URL: " + url);
  }
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    return {url, "/"};
  }
  return {url.substr(0, path_start), url.substr(path_start)};
}

class HttplibTransport : public HttpTransport {
 public:
  HttpResponse post(const std::string& url,
                    const std::map<std::string, std::string>& headers,
                    const std::string& body, const std::string& content_type,
                    std::chrono::seconds timeout) override {
    auto [base, path] = split_url(url);
    httplib::Client cli(base);
    configure(cli, timeout);
    httplib::Headers h(headers.begin(), headers.end());
    auto res = cli.Post(path, h, body, content_type);
    return to_response(res);
  }

  HttpResponse get(const std::string& url,
                   const std::map<std::string, std::string>& headers,
                   std::chrono::seconds timeout) override {
    auto [base, path] = split_url(url);
    httplib::Client cli(base);
    configure(cli, timeout);
    httplib::Headers h(headers.begin(), headers.end());
    auto res = cli.Get(path, h);
    return to_response(res);
  }

 private:
  static void configure(httplib::Client& cli, std::chrono::seconds timeout) {
    cli.set_connection_timeout(timeout.count(), 0);
    cli.set_read_timeout(timeout.count(), 0);
    cli.set_write_timeout(timeout.count(), 0);
    cli.set_follow_location(true);
  }

  static HttpResponse to_response(const httplib::Result& res) {
    if (!res) {
      if (res.error() == httplib::Error::ConnectionTimeout ||
          res.error() == httplib::Error::Read ||
          res.error() == httplib::Error::Write) {
        throw Error(ErrorKind::Timeout, httplib::to_string(res.error()));
      }
      throw Error(ErrorKind::NetworkError, httplib::to_string(res.error()));
    }
    return {res->status, res->body};
  }
};

}  // namespace

std::shared_ptr<HttpTransport> make_default_transport() {
  return std::make_shared<HttplibTransport>();
}

}  // namespace sqa
