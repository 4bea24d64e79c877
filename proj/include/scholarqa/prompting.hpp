#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scholarqa/dataset.hpp"
#include "scholarqa/dblp.hpp"
#include "scholarqa/llm.hpp"
#include "scholarqa/semopenalex.hpp"
#include "scholarqa/wiki.hpp"

namespace sqa {

enum class AnswerType { Number, Date, String, Resource };

const char* to_string(AnswerType type);
std::optional<AnswerType> answer_type_from_string(const std::string& label);

/// Ordered rule table over interrogative patterns; first match wins,
/// default string.
AnswerType predict_answer_type(const std::string& question);

/// Merged per-question facts; any constituent may be absent.
struct AuthorContext {
  std::optional<DblpAuthor> dblp;
  std::optional<AuthorMetrics> semoa_author;
  std::optional<InstitutionMetrics> semoa_institution;
  std::optional<WikiSnippet> wiki_author;
  std::optional<WikiSnippet> wiki_institution;

  bool any_present() const {
    return dblp || semoa_author || semoa_institution || wiki_author ||
           wiki_institution;
  }
};

struct PromptBundle {
  std::string question_id;
  std::string prompt_text;
  AnswerType answer_type = AnswerType::String;
  std::string rephrased_question;
};

/// The three rendered context blocks of the template.
struct RenderedContext {
  std::string author;        // {semoa_auth_data}
  std::string wiki_author;   // {wiki_auth_context}
  std::string institute;     // {semoa_inst_data}
  std::string wiki_institute;  // {wiki_inst_context}
  std::string publications;  // {dblp_pub_data}
};

RenderedContext render_context(const AuthorContext& ctx);

/// Single-sentence simplification via the backend; any failure falls
/// back to the original question.
std::string rephrase_question(const std::string& question,
                              CompletionBackend& llm);

struct PromptOptions {
  /// 0 means unlimited. When the rendered prompt exceeds this many
  /// characters, publication lines are dropped oldest-first, then the
  /// wiki institute text, then the wiki author text.
  size_t max_context_chars = 0;
  std::string template_text;  // empty -> shipped asset

  static PromptOptions defaults();
};

PromptBundle assemble_prompt(const QuestionRecord& record,
                             const AuthorContext& ctx,
                             const std::string& rephrased, AnswerType atype,
                             const PromptOptions& options = PromptOptions::defaults());

}  // namespace sqa
