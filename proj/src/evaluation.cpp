#include "scholarqa/evaluation.hpp"

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <set>

#include "scholarqa/errors.hpp"
#include "text_util.hpp"

namespace sqa {

namespace {

const std::set<std::string> kArticles = {"a", "an", "the"};

/// Whole-string numeric check on the trimmed raw answer.
std::optional<std::string> round_numeric_7sig(const std::string& raw) {
  const std::string trimmed = detail::trim(raw);
  if (trimmed.empty()) return std::nullopt;
  char* end = nullptr;
  double value = std::strtod(trimmed.c_str(), &end);
  if (end != trimmed.c_str() + trimmed.size()) return std::nullopt;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.7g", value);
  return std::string(buf);
}

std::vector<std::string> unique_tokens(const std::vector<std::string>& tokens) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& t : tokens) {
    if (seen.insert(t).second) out.push_back(t);
  }
  return out;
}

}  // namespace

std::vector<std::string> normalize_answer(const std::string& text) {
  std::string cleaned;
  cleaned.reserve(text.size());
  for (char c : text) {
    if (detail::is_alnum(c)) {
      cleaned.push_back(detail::lower(c));
    } else {
      cleaned.push_back(' ');
    }
  }
  std::vector<std::string> tokens;
  for (auto& token : detail::split_ws(cleaned)) {
    if (!kArticles.contains(token)) tokens.push_back(std::move(token));
  }
  return tokens;
}

bool exact_match(const std::string& pred, const std::string& gold,
                 const NormalizeOptions& options) {
  std::string p = pred, g = gold;
  if (options.numeric_7sig) {
    if (auto r = round_numeric_7sig(p)) p = *r;
    if (auto r = round_numeric_7sig(g)) g = *r;
  }
  return normalize_answer(p) == normalize_answer(g);
}

F1Score token_f1(const std::string& pred, const std::string& gold) {
  const auto p = unique_tokens(normalize_answer(pred));
  const auto g = unique_tokens(normalize_answer(gold));
  if (p.empty() && g.empty()) return {1.0, 1.0, 1.0};
  if (p.empty() || g.empty()) return {0.0, 0.0, 0.0};

  size_t overlap = 0;
  std::set<std::string> gold_set(g.begin(), g.end());
  for (const auto& token : p) {
    if (gold_set.contains(token)) ++overlap;
  }
  if (overlap == 0) return {0.0, 0.0, 0.0};

  F1Score score;
  score.precision = static_cast<double>(overlap) / static_cast<double>(p.size());
  score.recall = static_cast<double>(overlap) / static_cast<double>(g.size());
  score.f1 = 2.0 * score.precision * score.recall /
             (score.precision + score.recall);
  return score;
}

ItemScore score_item(const std::string& question_id, const std::string& pred,
                     const std::string& gold) {
  ItemScore item;
  item.question_id = question_id;
  item.em = exact_match(pred, gold);
  item.em_numeric_lenient = exact_match(pred, gold, {.numeric_7sig = true});
  item.f1 = token_f1(pred, gold);
  return item;
}

EvalReport aggregate(const std::vector<ItemScore>& items) {
  if (items.empty()) {
    throw Error(ErrorKind::EmptyEvaluation, "no items to aggregate");
  }
  EvalReport report;
  report.n = items.size();
  for (const auto& item : items) {
    report.exact_match_pct += item.em ? 1.0 : 0.0;
    report.exact_match_lenient_pct += item.em_numeric_lenient ? 1.0 : 0.0;
    report.precision += item.f1.precision;
    report.recall += item.f1.recall;
    report.f1 += item.f1.f1;
  }
  const double n = static_cast<double>(report.n);
  report.exact_match_pct = 100.0 * report.exact_match_pct / n;
  report.exact_match_lenient_pct = 100.0 * report.exact_match_lenient_pct / n;
  report.precision /= n;
  report.recall /= n;
  report.f1 /= n;
  return report;
}

}  // namespace sqa
