#include "scholarqa/llm.hpp"

#include <atomic>
#include <random>
#include <thread>

#include <json.hpp>

#include "scholarqa/errors.hpp"
#include "text_util.hpp"

namespace sqa {

using json = nlohmann::ordered_json;

namespace {

class HttpBackend : public CompletionBackend {
 public:
  HttpBackend(std::shared_ptr<HttpTransport> transport, LlmConfig config)
      : transport_(std::move(transport)), config_(std::move(config)) {}

  std::string complete(const std::string& /*id*/,
                       const std::string& prompt) override {
    json body;
    body["model"] = config_.model_id;
    body["messages"] = json::array({json{{"role", "user"}, {"content", prompt}}});
    body["temperature"] = config_.temperature;
    body["max_tokens"] = config_.max_tokens;
    if (config_.seed) body["seed"] = *config_.seed;

    HttpResponse res;
    try {
      res = transport_->post(config_.endpoint, {}, body.dump(),
                             "application/json", config_.request_timeout);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Timeout) throw;
      throw Error(ErrorKind::BackendError, e.what());
    }
    if (res.status < 200 || res.status >= 300) {
      throw Error(ErrorKind::BackendError,
                  "status " + std::to_string(res.status) + ": " + res.body);
    }
    try {
      auto doc = json::parse(res.body);
      return detail::trim(
          doc.at("choices").at(0).at("message").at("content").get<std::string>());
    } catch (const json::exception& e) {
      throw Error(ErrorKind::BackendError,
                  std::string("malformed completion response: ") + e.what());
    }
  }

 private:
  std::shared_ptr<HttpTransport> transport_;
  LlmConfig config_;
};

}  // namespace

std::unique_ptr<CompletionBackend> make_http_backend(
    std::shared_ptr<HttpTransport> transport, LlmConfig config) {
  return std::make_unique<HttpBackend>(std::move(transport), std::move(config));
}

StubBackend::StubBackend(Mode mode, std::map<std::string, std::string> canned,
                         std::string fallback)
    : mode_(mode), canned_(std::move(canned)), fallback_(std::move(fallback)) {}

std::string StubBackend::complete(const std::string& id,
                                  const std::string& prompt) {
  switch (mode_) {
    case Mode::Echo:
      return detail::trim(prompt);
    case Mode::IdEcho:
      return id;
    case Mode::Canned: {
      if (auto it = canned_.find(id); it != canned_.end()) return it->second;
      return fallback_;
    }
  }
  return fallback_;
}

std::vector<size_t> submission_order(size_t n, uint64_t seed) {
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  // Explicit Fisher-Yates with a fixed draw scheme; std::shuffle is not
  // pinned across standard libraries.
  std::mt19937_64 rng(seed);
  for (size_t i = n; i > 1; --i) {
    size_t j = static_cast<size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

std::vector<BatchResult> complete_batch(CompletionBackend& backend,
                                        const std::vector<BatchItem>& items,
                                        uint64_t order_seed, int concurrency) {
  if (concurrency < 1) concurrency = 1;
  const std::vector<size_t> order = submission_order(items.size(), order_seed);

  std::vector<BatchResult> results(items.size());
  std::atomic<size_t> next{0};

  auto worker = [&] {
    for (;;) {
      const size_t slot = next.fetch_add(1);
      if (slot >= order.size()) return;
      const size_t index = order[slot];
      const BatchItem& item = items[index];
      BatchResult& result = results[index];
      result.id = item.id;
      try {
        result.answer = backend.complete(item.id, item.prompt);
      } catch (const std::exception& e) {
        result.error = e.what();
      }
    }
  };

  const size_t threads =
      std::min<size_t>(static_cast<size_t>(concurrency), std::max<size_t>(items.size(), 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  return results;
}

}  // namespace sqa
