/* scholarqa.h - C API for the scholarly question-answering pipeline.
 *
 * The core is C++; this header is the stable surface for the CLI and
 * other language bindings. All handles are opaque; all functions return
 * an sqa_status except the accessors documented otherwise.
 */
#ifndef SCHOLARQA_H
#define SCHOLARQA_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sqa_status {
  SQA_OK = 0,
  /* fatal input problem (missing/malformed file, bad config) */
  SQA_ERR_INPUT = 1,
  /* stage finished with per-question failures recorded */
  SQA_PARTIAL = 2,
  /* network / endpoint / backend failure */
  SQA_ERR_REMOTE = 3,
  /* anything else */
  SQA_ERR_INTERNAL = 4,
  SQA_ERR_BAD_ARGUMENT = 5
} sqa_status;

const char* sqa_version(void);

/* ---- pipeline ---- */

typedef struct sqa_pipeline sqa_pipeline;

/* Creates a pipeline from a flat JSON config file. On failure returns
 * NULL; if errbuf is non-NULL it receives a message. */
sqa_pipeline* sqa_pipeline_create(const char* config_path, char* errbuf,
                                  size_t errbuf_len);
void sqa_pipeline_destroy(sqa_pipeline* p);

/* Overrides applied before the first stage runs. */
sqa_status sqa_pipeline_set_offline(sqa_pipeline* p, int offline);
sqa_status sqa_pipeline_set_seed(sqa_pipeline* p, uint64_t seed);
sqa_status sqa_pipeline_set_limit(sqa_pipeline* p, uint64_t limit);

/* stage is one of: "extract", "prompt", "answer", "evaluate", "run-all".
 * Returns SQA_OK, SQA_PARTIAL, or an error status. */
sqa_status sqa_pipeline_run_stage(sqa_pipeline* p, const char* stage);

/* Message for the last failing call on this handle; empty string when
 * none. The pointer stays valid until the next call on the handle. */
const char* sqa_pipeline_last_error(const sqa_pipeline* p);

/* ---- stateless evaluation helpers ---- */

/* out_em receives 0/1. numeric_lenient rounds numeric-only answers to
 * 7 significant digits before comparison. */
sqa_status sqa_eval_exact_match(const char* pred, const char* gold,
                                int numeric_lenient, int* out_em);

sqa_status sqa_eval_token_f1(const char* pred, const char* gold,
                             double* out_precision, double* out_recall,
                             double* out_f1);

#ifdef __cplusplus
}
#endif

#endif /* SCHOLARQA_H */
