#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "scholarqa/client.hpp"
#include "scholarqa/dblp.hpp"

namespace sqa {

/// A numeric graph literal kept in its exact lexical form; the parsed
/// value is only used for validation, never for rendering.
struct NumericLiteral {
  std::string lexical;
  double value = 0.0;

  bool operator==(const NumericLiteral&) const = default;
};

struct AuthorMetrics {
  std::string semoa_author_iri;
  std::string name;
  std::optional<NumericLiteral> works_count;
  std::optional<NumericLiteral> cited_by_count;
  std::optional<NumericLiteral> h_index;
  std::optional<NumericLiteral> i10_index;
  std::optional<NumericLiteral> two_yr_mean_citedness;
  std::optional<std::string> institution_iri;
  std::optional<std::string> institution_name;

  bool operator==(const AuthorMetrics&) const = default;
};

struct InstitutionMetrics {
  std::string institution_iri;
  std::string name;
  std::optional<std::string> institution_type;
  std::optional<NumericLiteral> cited_by_count;
  std::optional<NumericLiteral> works_count;

  bool operator==(const InstitutionMetrics&) const = default;
};

struct SemoaQueryTemplates {
  std::string author_by_orcid;    // {orcid}
  std::string author_metrics;     // {author_iri}
  std::string institution_metrics;  // {institution_iri}

  static SemoaQueryTemplates defaults();
};

class SemoaExtractor {
 public:
  SemoaExtractor(const SparqlClient& client, std::string endpoint,
                 SemoaQueryTemplates templates = SemoaQueryTemplates::defaults(),
                 WarningSink warn = nullptr);

  /// ORCID -> SemOpenAlex author IRI. Zero matches is OrcidNotInGraph,
  /// more than one is AmbiguousOrcid.
  std::string resolve_author_by_orcid(const std::string& orcid) const;

  AuthorMetrics fetch_author_metrics(const std::string& author_iri) const;

  InstitutionMetrics fetch_institution_metrics(
      const std::string& institution_iri) const;

 private:
  const SparqlClient& client_;
  std::string endpoint_;
  SemoaQueryTemplates templates_;
  WarningSink warn_;
};

}  // namespace sqa
