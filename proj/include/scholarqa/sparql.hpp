#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sqa {

struct SparqlQuery {
  std::string text;
  std::string endpoint;
};

struct RdfTerm {
  enum class Kind { Iri, Literal, Blank };

  Kind kind = Kind::Literal;
  std::string value;
  std::optional<std::string> datatype;  // exclusive with language
  std::optional<std::string> language;

  bool operator==(const RdfTerm&) const = default;

  static RdfTerm iri(std::string v);
  static RdfTerm literal(std::string v,
                         std::optional<std::string> datatype = {},
                         std::optional<std::string> language = {});
};

/// A parsed SPARQL result document: SELECT bindings or an ASK boolean.
struct ResultSet {
  std::vector<std::string> variables;
  std::vector<std::map<std::string, RdfTerm>> rows;
  std::optional<bool> boolean;

  bool operator==(const ResultSet&) const = default;
  bool empty() const { return rows.empty(); }
};

/// W3C SPARQL 1.1 Query Results JSON Format.
ResultSet parse_results_json(const std::string& body);
std::string serialize_results_json(const ResultSet& rs);

}  // namespace sqa
