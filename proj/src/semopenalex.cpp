#include "scholarqa/semopenalex.hpp"

#include <cmath>
#include <set>

#include "assets_gen.hpp"
#include "scholarqa/errors.hpp"
#include "text_util.hpp"

namespace sqa {

namespace {

NumericLiteral parse_numeric(const RdfTerm& term, const std::string& what) {
  NumericLiteral lit;
  lit.lexical = term.value;
  try {
    size_t consumed = 0;
    lit.value = std::stod(term.value, &consumed);
    if (consumed != term.value.size()) throw std::invalid_argument(term.value);
  } catch (const std::exception&) {
    throw Error(ErrorKind::MalformedResults,
                what + " is not numeric: '" + term.value + "'");
  }
  if (!std::isfinite(lit.value) || lit.value < 0) {
    throw Error(ErrorKind::MalformedResults,
                what + " is negative or not finite: '" + term.value + "'");
  }
  return lit;
}

std::optional<NumericLiteral> numeric_field(
    const std::map<std::string, RdfTerm>& row, const char* var) {
  auto it = row.find(var);
  if (it == row.end()) return std::nullopt;
  return parse_numeric(it->second, var);
}

}  // namespace

SemoaQueryTemplates SemoaQueryTemplates::defaults() {
  return {assets::k_semoa_author_by_orcid_rq, assets::k_semoa_author_metrics_rq,
          assets::k_semoa_institution_metrics_rq};
}

SemoaExtractor::SemoaExtractor(const SparqlClient& client, std::string endpoint,
                               SemoaQueryTemplates templates, WarningSink warn)
    : client_(client),
      endpoint_(std::move(endpoint)),
      templates_(std::move(templates)),
      warn_(std::move(warn)) {}

std::string SemoaExtractor::resolve_author_by_orcid(const std::string& orcid) const {
  ResultSet rs;
  try {
    rs = client_.execute(
        {detail::replace_all(templates_.author_by_orcid, "{orcid}", orcid),
         endpoint_});
  } catch (const Error& e) {
    throw Error(ErrorKind::EndpointError, e.what());
  }

  std::set<std::string> candidates;
  for (const auto& row : rs.rows) {
    if (auto it = row.find("author"); it != row.end()) {
      candidates.insert(it->second.value);
    }
  }
  if (candidates.empty()) {
    throw Error(ErrorKind::OrcidNotInGraph, orcid);
  }
  if (candidates.size() > 1) {
    std::string list;
    for (const auto& c : candidates) {
      if (!list.empty()) list += ", ";
      list += c;
    }
    throw Error(ErrorKind::AmbiguousOrcid, orcid + " -> [" + list + "]");
  }
  return *candidates.begin();
}

AuthorMetrics SemoaExtractor::fetch_author_metrics(
    const std::string& author_iri) const {
  ResultSet rs;
  try {
    rs = client_.execute(
        {detail::replace_all(templates_.author_metrics, "{author_iri}", author_iri),
         endpoint_});
  } catch (const Error& e) {
    throw Error(ErrorKind::EndpointError, e.what());
  }
  if (rs.rows.empty()) {
    throw Error(ErrorKind::AuthorNodeNotFound, author_iri);
  }

  AuthorMetrics metrics;
  metrics.semoa_author_iri = author_iri;

  // One row per affiliation when several exist; scalar fields repeat.
  std::set<std::string> institutions;
  for (const auto& row : rs.rows) {
    if (auto it = row.find("institution"); it != row.end()) {
      institutions.insert(it->second.value);
    }
  }

  std::optional<std::string> chosen_institution;
  if (!institutions.empty()) {
    chosen_institution = *institutions.begin();  // lexicographically smallest
    if (institutions.size() > 1 && warn_) {
      warn_(author_iri + " has " + std::to_string(institutions.size()) +
            " affiliations; using " + *chosen_institution);
    }
  }

  for (const auto& row : rs.rows) {
    if (auto it = row.find("name"); it != row.end() && metrics.name.empty()) {
      metrics.name = it->second.value;
    }
    if (!metrics.works_count) metrics.works_count = numeric_field(row, "worksCount");
    if (!metrics.cited_by_count)
      metrics.cited_by_count = numeric_field(row, "citedByCount");
    if (!metrics.h_index) metrics.h_index = numeric_field(row, "hIndex");
    if (!metrics.i10_index) metrics.i10_index = numeric_field(row, "i10Index");
    if (!metrics.two_yr_mean_citedness)
      metrics.two_yr_mean_citedness = numeric_field(row, "meanCitedness");

    auto inst = row.find("institution");
    if (chosen_institution && inst != row.end() &&
        inst->second.value == *chosen_institution) {
      metrics.institution_iri = *chosen_institution;
      if (auto n = row.find("institutionName"); n != row.end()) {
        metrics.institution_name = n->second.value;
      }
    }
  }
  return metrics;
}

InstitutionMetrics SemoaExtractor::fetch_institution_metrics(
    const std::string& institution_iri) const {
  ResultSet rs;
  try {
    rs = client_.execute({detail::replace_all(templates_.institution_metrics,
                                              "{institution_iri}", institution_iri),
                          endpoint_});
  } catch (const Error& e) {
    throw Error(ErrorKind::EndpointError, e.what());
  }
  if (rs.rows.empty()) {
    throw Error(ErrorKind::InstitutionNodeNotFound, institution_iri);
  }

  InstitutionMetrics metrics;
  metrics.institution_iri = institution_iri;
  for (const auto& row : rs.rows) {
    if (auto it = row.find("name"); it != row.end() && metrics.name.empty()) {
      metrics.name = it->second.value;
    }
    if (auto it = row.find("type");
        it != row.end() && !metrics.institution_type) {
      metrics.institution_type = it->second.value;
    }
    if (!metrics.cited_by_count)
      metrics.cited_by_count = numeric_field(row, "citedByCount");
    if (!metrics.works_count) metrics.works_count = numeric_field(row, "worksCount");
  }
  if (metrics.name.empty()) {
    throw Error(ErrorKind::MalformedResults,
                "institution without a name: " + institution_iri);
  }
  return metrics;
}

}  // namespace sqa
