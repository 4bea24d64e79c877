#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scholarqa/http.hpp"

namespace sqa {

struct LlmConfig {
  std::string endpoint;
  std::string model_id;
  double temperature = 0.0;
  int max_tokens = 256;
  std::chrono::seconds request_timeout{60};
  std::optional<int64_t> seed;
};

/// Completion backend seam; the HTTP implementation speaks the
/// OpenAI-compatible chat-completion shape.
class CompletionBackend {
 public:
  virtual ~CompletionBackend() = default;
  virtual std::string complete(const std::string& id,
                               const std::string& prompt) = 0;
};

std::unique_ptr<CompletionBackend> make_http_backend(
    std::shared_ptr<HttpTransport> transport, LlmConfig config);

/// Deterministic stub for hermetic tests and offline runs.
/// Modes: canned map keyed by item id (miss -> fallback text),
/// echo (returns the prompt trimmed), id-echo (returns the item id).
class StubBackend : public CompletionBackend {
 public:
  enum class Mode { Canned, Echo, IdEcho };

  explicit StubBackend(Mode mode, std::map<std::string, std::string> canned = {},
                       std::string fallback = "Do not know");

  std::string complete(const std::string& id, const std::string& prompt) override;

 private:
  Mode mode_;
  std::map<std::string, std::string> canned_;
  std::string fallback_;
};

struct BatchItem {
  std::string id;
  std::string prompt;
};

struct BatchResult {
  std::string id;
  std::optional<std::string> answer;  // absent on per-item failure
  std::string error;                  // message when answer absent
};

/// Seed-determined Fisher-Yates permutation; stable across platforms.
std::vector<size_t> submission_order(size_t n, uint64_t seed);

/// Submits prompts in the permuted order with at most `concurrency`
/// in flight, then re-associates results so output order equals input
/// order. Per-item failures are collected, never fatal.
std::vector<BatchResult> complete_batch(CompletionBackend& backend,
                                        const std::vector<BatchItem>& items,
                                        uint64_t order_seed,
                                        int concurrency = 4);

}  // namespace sqa
