#include "scholarqa.h"

#include <cstring>
#include <string>

#include "scholarqa/errors.hpp"
#include "scholarqa/evaluation.hpp"
#include "scholarqa/pipeline.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

sqa_status status_from(const sqa::Error& e) {
  using sqa::ErrorKind;
  switch (e.kind()) {
    case ErrorKind::MissingFile:
    case ErrorKind::MalformedRecord:
    case ErrorKind::DuplicateId:
    case ErrorKind::BadConfig:
    case ErrorKind::EmptyEvaluation:
      return SQA_ERR_INPUT;
    case ErrorKind::Timeout:
    case ErrorKind::HttpError:
    case ErrorKind::NetworkError:
    case ErrorKind::EndpointError:
    case ErrorKind::BackendError:
      return SQA_ERR_REMOTE;
    default:
      return SQA_ERR_INTERNAL;
  }
}

void copy_message(char* buf, size_t len, const std::string& message) {
  if (!buf || len == 0) return;
  size_t n = std::min(len - 1, message.size());
  std::memcpy(buf, message.data(), n);
  buf[n] = '\0';
}

}  // namespace

struct sqa_pipeline {
  sqa::PipelineConfig config;
  std::unique_ptr<sqa::Pipeline> pipeline;  // built lazily so overrides apply
  std::string last_error;

  sqa::Pipeline& get() {
    if (!pipeline) pipeline = std::make_unique<sqa::Pipeline>(config);
    return *pipeline;
  }
};

extern "C" {

const char* sqa_version(void) { return kVersion; }

sqa_pipeline* sqa_pipeline_create(const char* config_path, char* errbuf,
                                  size_t errbuf_len) {
  if (!config_path) {
    copy_message(errbuf, errbuf_len, "config_path is NULL");
    return nullptr;
  }
  try {
    auto* p = new sqa_pipeline;
    p->config = sqa::PipelineConfig::load(config_path);
    return p;
  } catch (const std::exception& e) {
    copy_message(errbuf, errbuf_len, e.what());
    return nullptr;
  }
}

void sqa_pipeline_destroy(sqa_pipeline* p) { delete p; }

sqa_status sqa_pipeline_set_offline(sqa_pipeline* p, int offline) {
  if (!p) return SQA_ERR_BAD_ARGUMENT;
  if (p->pipeline) {
    p->last_error = "pipeline already started; set overrides first";
    return SQA_ERR_BAD_ARGUMENT;
  }
  p->config.offline = offline != 0;
  return SQA_OK;
}

sqa_status sqa_pipeline_set_seed(sqa_pipeline* p, uint64_t seed) {
  if (!p) return SQA_ERR_BAD_ARGUMENT;
  if (p->pipeline) {
    p->last_error = "pipeline already started; set overrides first";
    return SQA_ERR_BAD_ARGUMENT;
  }
  p->config.order_seed = seed;
  return SQA_OK;
}

sqa_status sqa_pipeline_set_limit(sqa_pipeline* p, uint64_t limit) {
  if (!p) return SQA_ERR_BAD_ARGUMENT;
  if (p->pipeline) {
    p->last_error = "pipeline already started; set overrides first";
    return SQA_ERR_BAD_ARGUMENT;
  }
  p->config.limit = static_cast<size_t>(limit);
  return SQA_OK;
}

sqa_status sqa_pipeline_run_stage(sqa_pipeline* p, const char* stage) {
  if (!p || !stage) return SQA_ERR_BAD_ARGUMENT;
  p->last_error.clear();
  const std::string name = stage;
  try {
    if (name == "extract") {
      return p->get().run_extract().failed > 0 ? SQA_PARTIAL : SQA_OK;
    }
    if (name == "prompt") {
      auto s = p->get().run_prompt();
      return s.failed > 0 || s.skipped > 0 ? SQA_PARTIAL : SQA_OK;
    }
    if (name == "answer") {
      auto s = p->get().run_answer();
      return s.failed > 0 || s.skipped > 0 ? SQA_PARTIAL : SQA_OK;
    }
    if (name == "evaluate") {
      p->get().run_evaluate();
      return SQA_OK;
    }
    if (name == "run-all") {
      return p->get().run_all() == 0 ? SQA_OK : SQA_PARTIAL;
    }
    p->last_error = "unknown stage '" + name + "'";
    return SQA_ERR_BAD_ARGUMENT;
  } catch (const sqa::Error& e) {
    p->last_error = e.what();
    return status_from(e);
  } catch (const std::exception& e) {
    p->last_error = e.what();
    return SQA_ERR_INTERNAL;
  }
}

const char* sqa_pipeline_last_error(const sqa_pipeline* p) {
  return p ? p->last_error.c_str() : "";
}

sqa_status sqa_eval_exact_match(const char* pred, const char* gold,
                                int numeric_lenient, int* out_em) {
  if (!pred || !gold || !out_em) return SQA_ERR_BAD_ARGUMENT;
  *out_em = sqa::exact_match(pred, gold,
                             {.numeric_7sig = numeric_lenient != 0})
                ? 1
                : 0;
  return SQA_OK;
}

sqa_status sqa_eval_token_f1(const char* pred, const char* gold,
                             double* out_precision, double* out_recall,
                             double* out_f1) {
  if (!pred || !gold) return SQA_ERR_BAD_ARGUMENT;
  sqa::F1Score s = sqa::token_f1(pred, gold);
  if (out_precision) *out_precision = s.precision;
  if (out_recall) *out_recall = s.recall;
  if (out_f1) *out_f1 = s.f1;
  return SQA_OK;
}

}  // extern "C"
