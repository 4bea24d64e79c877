#include "scholarqa/prompting.hpp"

#include <algorithm>
#include <array>

#include "assets_gen.hpp"
#include "scholarqa/errors.hpp"
#include "text_util.hpp"

namespace sqa {

namespace {

constexpr const char* kNotAvailable = "not available";

}  // namespace

const char* to_string(AnswerType type) {
  switch (type) {
    case AnswerType::Number: return "number";
    case AnswerType::Date: return "date";
    case AnswerType::String: return "string";
    case AnswerType::Resource: return "resource";
  }
  return "string";
}

std::optional<AnswerType> answer_type_from_string(const std::string& label) {
  if (label == "number") return AnswerType::Number;
  if (label == "date") return AnswerType::Date;
  if (label == "string") return AnswerType::String;
  if (label == "resource") return AnswerType::Resource;
  return std::nullopt;
}

AnswerType predict_answer_type(const std::string& question) {
  const std::string q = detail::casefold(question);
  auto any = [&](std::initializer_list<const char*> phrases) {
    for (const char* p : phrases) {
      if (detail::contains_word_phrase(q, p)) return true;
    }
    return false;
  };
  // Ordered rules; first match wins.
  if (any({"how many", "how much", "count", "average", "number of", "index",
           "citedness", "citations"})) {
    return AnswerType::Number;
  }
  if (any({"when", "year", "date"})) {
    return AnswerType::Date;
  }
  if (any({"where", "who", "whom", "which institute", "which institution",
           "which university", "which organization"})) {
    return AnswerType::Resource;
  }
  return AnswerType::String;
}

namespace {

std::string numeric_or(const std::optional<NumericLiteral>& lit) {
  return lit ? lit->lexical : std::string();
}

void append_triple(std::string& block, const std::string& subject,
                   const char* property, const std::string& value) {
  if (value.empty()) return;
  if (!block.empty()) block.push_back('\n');
  block += "(" + subject + ", " + property + ", " + value + ")";
}

std::string render_publication_line(const Publication& pub) {
  std::string coauthors;
  for (const auto& name : pub.coauthors) {
    if (!coauthors.empty()) coauthors += "; ";
    coauthors += name;
  }
  if (coauthors.empty()) coauthors = "-";
  return "(" + pub.title + ", " + pub.venue.value_or("-") + ", " +
         (pub.year ? std::to_string(*pub.year) : std::string("-")) +
         ", coauthors: " + coauthors + ")";
}

std::string render_wiki(const std::optional<WikiSnippet>& snippet) {
  if (!snippet || snippet->source == WikiSnippet::Source::None ||
      snippet->summary.empty()) {
    return kNotAvailable;
  }
  return snippet->summary;
}

/// Replaces {placeholder} and re-indents multi-line values to the
/// placeholder's own indentation.
std::string substitute(std::string text, const std::string& placeholder,
                       const std::string& value) {
  const std::string token = "{" + placeholder + "}";
  size_t pos = text.find(token);
  if (pos == std::string::npos) return text;

  size_t line_start = text.rfind('\n', pos);
  line_start = line_start == std::string::npos ? 0 : line_start + 1;
  std::string indent = text.substr(line_start, pos - line_start);
  if (indent.find_first_not_of(" \t") != std::string::npos) indent.clear();

  const std::string indented =
      detail::replace_all(value, "\n", "\n" + indent);
  text.replace(pos, token.size(), indented);
  return text;
}

}  // namespace

RenderedContext render_context(const AuthorContext& ctx) {
  RenderedContext out;

  if (ctx.semoa_author) {
    const AuthorMetrics& m = *ctx.semoa_author;
    const std::string subject = m.name.empty() ? "author" : m.name;
    append_triple(out.author, subject, "worksCount", numeric_or(m.works_count));
    append_triple(out.author, subject, "citedByCount",
                  numeric_or(m.cited_by_count));
    append_triple(out.author, subject, "hIndex", numeric_or(m.h_index));
    append_triple(out.author, subject, "i10Index", numeric_or(m.i10_index));
    append_triple(out.author, subject, "2YrMeanCitedness",
                  numeric_or(m.two_yr_mean_citedness));
    append_triple(out.author, subject, "memberOf",
                  m.institution_name.value_or(""));
  }
  if (out.author.empty()) out.author = kNotAvailable;
  out.wiki_author = render_wiki(ctx.wiki_author);

  if (ctx.semoa_institution) {
    const InstitutionMetrics& m = *ctx.semoa_institution;
    const std::string subject = m.name.empty() ? "institute" : m.name;
    append_triple(out.institute, subject, "type",
                  m.institution_type.value_or(""));
    append_triple(out.institute, subject, "citedByCount",
                  numeric_or(m.cited_by_count));
    append_triple(out.institute, subject, "worksCount",
                  numeric_or(m.works_count));
  }
  if (out.institute.empty()) out.institute = kNotAvailable;
  out.wiki_institute = render_wiki(ctx.wiki_institution);

  if (ctx.dblp && !ctx.dblp->publications.empty()) {
    // Render year-descending so truncation can shed oldest lines first,
    // even when the context was assembled by hand.
    std::vector<Publication> pubs = ctx.dblp->publications;
    std::stable_sort(pubs.begin(), pubs.end(),
                     [](const Publication& a, const Publication& b) {
                       return a.year.value_or(-1) > b.year.value_or(-1);
                     });
    for (const auto& pub : pubs) {
      if (!out.publications.empty()) out.publications.push_back('\n');
      out.publications += render_publication_line(pub);
    }
  } else {
    out.publications = kNotAvailable;
  }
  return out;
}

std::string rephrase_question(const std::string& question,
                              CompletionBackend& llm) {
  try {
    const std::string prompt = detail::replace_all(
        assets::k_rephrase_prompt_txt, "{question}", question);
    std::string answer = llm.complete("rephrase", prompt);
    // Keep a single sentence: first non-empty line, trimmed.
    size_t nl = answer.find('\n');
    if (nl != std::string::npos) answer = answer.substr(0, nl);
    answer = detail::trim(answer);
    return answer.empty() ? question : answer;
  } catch (const std::exception&) {
    return question;
  }
}

PromptOptions PromptOptions::defaults() { return {}; }

PromptBundle assemble_prompt(const QuestionRecord& record,
                             const AuthorContext& ctx,
                             const std::string& rephrased, AnswerType atype,
                             const PromptOptions& options) {
  if (!ctx.any_present()) {
    throw Error(ErrorKind::EmptyContext, record.id);
  }

  const std::string& template_text = options.template_text.empty()
                                         ? assets::k_prompt_template_txt
                                         : options.template_text;

  RenderedContext rendered = render_context(ctx);

  auto render = [&](const RenderedContext& rc) {
    std::string text = template_text;
    text = substitute(text, "question", record.question);
    text = substitute(text, "rephrased_question", rephrased);
    text = substitute(text, "semoa_auth_data", rc.author);
    text = substitute(text, "wiki_auth_context", rc.wiki_author);
    text = substitute(text, "semoa_inst_data", rc.institute);
    text = substitute(text, "wiki_inst_context", rc.wiki_institute);
    text = substitute(text, "dblp_pub_data", rc.publications);
    text = substitute(text, "type", to_string(atype));
    return text;
  };

  std::string prompt = render(rendered);

  if (options.max_context_chars > 0) {
    // Shed context before anything else: publication lines oldest-first,
    // then the wiki institute text, then the wiki author text.
    while (prompt.size() > options.max_context_chars &&
           rendered.publications != kNotAvailable) {
      size_t cut = rendered.publications.rfind('\n');
      if (cut == std::string::npos) {
        rendered.publications = kNotAvailable;
      } else {
        rendered.publications.resize(cut);
      }
      prompt = render(rendered);
    }
    if (prompt.size() > options.max_context_chars &&
        rendered.wiki_institute != kNotAvailable) {
      rendered.wiki_institute = kNotAvailable;
      prompt = render(rendered);
    }
    if (prompt.size() > options.max_context_chars &&
        rendered.wiki_author != kNotAvailable) {
      rendered.wiki_author = kNotAvailable;
      prompt = render(rendered);
    }
  }

  PromptBundle bundle;
  bundle.question_id = record.id;
  bundle.prompt_text = std::move(prompt);
  bundle.answer_type = atype;
  bundle.rephrased_question = rephrased;
  return bundle;
}

}  // namespace sqa
