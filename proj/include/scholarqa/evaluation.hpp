#pragma once

#include <string>
#include <vector>

namespace sqa {

/// casefold, strip punctuation, collapse whitespace, drop articles
/// (a, an, the), split on whitespace. Idempotent.
std::vector<std::string> normalize_answer(const std::string& text);

struct NormalizeOptions {
  /// When set, answers that are a single numeric value are rounded to
  /// 7 significant digits before normalization.
  bool numeric_7sig = false;
};

bool exact_match(const std::string& pred, const std::string& gold,
                 const NormalizeOptions& options = {});

struct F1Score {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  bool operator==(const F1Score&) const = default;
};

/// Token overlap over the unique normalized tokens of each side.
/// Both sides empty -> (1,1,1); exactly one empty -> (0,0,0).
F1Score token_f1(const std::string& pred, const std::string& gold);

struct ItemScore {
  std::string question_id;
  bool em = false;
  bool em_numeric_lenient = false;
  F1Score f1;
};

ItemScore score_item(const std::string& question_id, const std::string& pred,
                     const std::string& gold);

struct EvalReport {
  size_t n = 0;
  double exact_match_pct = 0.0;
  double exact_match_lenient_pct = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Per-question macro averages; throws EmptyEvaluation on no items.
EvalReport aggregate(const std::vector<ItemScore>& items);

}  // namespace sqa
