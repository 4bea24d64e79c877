#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "scholarqa/client.hpp"
#include "scholarqa/dataset.hpp"
#include "scholarqa/evaluation.hpp"
#include "scholarqa/llm.hpp"

namespace sqa {

/// Flat key-value config file (JSON object, one level deep).
struct PipelineConfig {
  std::filesystem::path dataset_path;
  Split split = Split::Train;
  std::filesystem::path gold_path;  // defaults to dataset_path

  std::string dblp_endpoint;
  std::string semoa_endpoint;

  std::filesystem::path wiki_corpus_path;
  bool wiki_live = false;
  std::string wiki_live_endpoint =
      "https://en.wikipedia.org/api/rest_v1/page/summary/";

  std::filesystem::path cache_dir;
  bool bypass_cache = false;
  std::filesystem::path run_dir;

  std::string llm_backend = "http";  // http | stub | stub-echo | stub-id
  std::filesystem::path llm_stub_answers;
  LlmConfig llm;

  uint64_t order_seed = 0;
  int concurrency = 4;
  double fuzzy_threshold = 0.85;
  size_t max_context_chars = 0;
  bool offline = false;
  std::optional<size_t> limit;
  RetryPolicy retry;

  static PipelineConfig load(const std::filesystem::path& path);
};

struct StageSummary {
  size_t total = 0;
  size_t ok = 0;
  size_t skipped = 0;
  size_t failed = 0;

  bool partial() const { return failed > 0 || skipped > 0; }
};

/// Staged, resumable runner. Each stage reads only prior-stage
/// artifacts under run_dir: contexts.jsonl, prompts.jsonl,
/// predictions.jsonl, report.json, scores.tsv.
class Pipeline {
 public:
  explicit Pipeline(PipelineConfig config,
                    std::shared_ptr<HttpTransport> transport = nullptr);
  ~Pipeline();

  Pipeline(const Pipeline&) = delete;
  Pipeline& operator=(const Pipeline&) = delete;

  StageSummary run_extract();
  StageSummary run_prompt();
  StageSummary run_answer();
  EvalReport run_evaluate();

  /// extract -> prompt -> answer -> evaluate.
  /// Exit-code convention: 0 clean, 2 partial failures recorded.
  int run_all();

  const PipelineConfig& config() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace sqa
