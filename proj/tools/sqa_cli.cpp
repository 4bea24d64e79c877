// Command-line front end; links only the C API.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scholarqa.h"

namespace {

int run_stage(const std::string& config_path, const std::string& stage,
              bool offline, const std::optional<uint64_t>& seed,
              const std::optional<uint64_t>& limit) {
  char errbuf[1024] = {0};
  sqa_pipeline* p = sqa_pipeline_create(config_path.c_str(), errbuf, sizeof(errbuf));
  if (!p) {
    std::fprintf(stderr, "error: %s\n", errbuf);
    return 1;
  }
  if (offline) sqa_pipeline_set_offline(p, 1);
  if (seed) sqa_pipeline_set_seed(p, *seed);
  if (limit) sqa_pipeline_set_limit(p, *limit);

  sqa_status status = sqa_pipeline_run_stage(p, stage.c_str());
  int exit_code = 0;
  switch (status) {
    case SQA_OK:
      break;
    case SQA_PARTIAL:
      std::fprintf(stderr, "completed with partial failures recorded\n");
      exit_code = 2;
      break;
    default:
      std::fprintf(stderr, "error: %s\n", sqa_pipeline_last_error(p));
      exit_code = 1;
      break;
  }
  sqa_pipeline_destroy(p);
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scholarly question-answering pipeline"};
  app.set_version_flag("--version", sqa_version());
  app.require_subcommand(1);
  app.fallthrough();  // allow global flags after the stage name

  std::string config_path;
  bool offline = false;
  std::optional<uint64_t> seed;
  std::optional<uint64_t> limit;
  app.add_option("--config", config_path, "Pipeline config file (JSON)")
      ->required();
  app.add_flag("--offline", offline,
               "Forbid all network access; require caches/mocks");
  app.add_option("--seed", seed, "Submission-order seed override");
  app.add_option("--limit", limit, "Process only the first n questions");

  static const std::vector<std::pair<const char*, const char*>> stages = {
      {"extract", "Extract per-question context from the knowledge sources"},
      {"prompt", "Assemble prompts from extracted contexts"},
      {"answer", "Submit prompts to the completion backend"},
      {"evaluate", "Score predictions against gold answers"},
      {"run-all", "Run extract, prompt, answer and evaluate in order"},
  };
  for (const auto& [name, help] : stages) {
    app.add_subcommand(name, help);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // exit code 1 for usage errors, 0 for --help/--version
    return app.exit(e) == 0 ? 0 : 1;
  }

  const std::string stage = app.get_subcommands().front()->get_name();
  return run_stage(config_path, stage, offline, seed, limit);
}
