#include "scholarqa/sparql.hpp"

#include <json.hpp>

#include "scholarqa/errors.hpp"

namespace sqa {

using json = nlohmann::ordered_json;

RdfTerm RdfTerm::iri(std::string v) {
  RdfTerm t;
  t.kind = Kind::Iri;
  t.value = std::move(v);
  return t;
}

RdfTerm RdfTerm::literal(std::string v, std::optional<std::string> datatype,
                         std::optional<std::string> language) {
  RdfTerm t;
  t.kind = Kind::Literal;
  t.value = std::move(v);
  t.datatype = std::move(datatype);
  t.language = std::move(language);
  return t;
}

namespace {

RdfTerm parse_term(const json& b) {
  if (!b.is_object() || !b.contains("type") || !b.contains("value")) {
    throw Error(ErrorKind::MalformedResults, "binding is not a term object");
  }
  const std::string type = b.at("type").get<std::string>();
  RdfTerm term;
  term.value = b.at("value").get<std::string>();
  if (type == "uri") {
    term.kind = RdfTerm::Kind::Iri;
  } else if (type == "literal" || type == "typed-literal") {
    term.kind = RdfTerm::Kind::Literal;
    if (b.contains("datatype")) term.datatype = b.at("datatype").get<std::string>();
    if (b.contains("xml:lang")) term.language = b.at("xml:lang").get<std::string>();
    if (term.datatype && term.language) {
      throw Error(ErrorKind::MalformedResults,
                  "literal carries both datatype and language");
    }
  } else if (type == "bnode") {
    term.kind = RdfTerm::Kind::Blank;
  } else {
    throw Error(ErrorKind::MalformedResults, "unknown term type '" + type + "'");
  }
  return term;
}

}  // namespace

ResultSet parse_results_json(const std::string& body) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::MalformedResults, std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("head")) {
    throw Error(ErrorKind::MalformedResults, "missing 'head'");
  }

  ResultSet rs;
  if (doc.contains("boolean")) {
    if (!doc.at("boolean").is_boolean()) {
      throw Error(ErrorKind::MalformedResults, "'boolean' is not a boolean");
    }
    rs.boolean = doc.at("boolean").get<bool>();
    return rs;
  }

  const json& head = doc.at("head");
  if (head.contains("vars")) {
    for (const auto& v : head.at("vars")) {
      rs.variables.push_back(v.get<std::string>());
    }
  }
  if (!doc.contains("results") || !doc.at("results").contains("bindings")) {
    throw Error(ErrorKind::MalformedResults, "missing 'results.bindings'");
  }
  for (const auto& binding : doc.at("results").at("bindings")) {
    std::map<std::string, RdfTerm> row;
    for (auto it = binding.begin(); it != binding.end(); ++it) {
      if (std::find(rs.variables.begin(), rs.variables.end(), it.key()) ==
          rs.variables.end()) {
        throw Error(ErrorKind::MalformedResults,
                    "row binds undeclared variable '" + it.key() + "'");
      }
      row.emplace(it.key(), parse_term(it.value()));
    }
    rs.rows.push_back(std::move(row));
  }
  return rs;
}

std::string serialize_results_json(const ResultSet& rs) {
  json doc;
  doc["head"] = json::object();
  if (rs.boolean) {
    doc["boolean"] = *rs.boolean;
    return doc.dump();
  }
  doc["head"]["vars"] = rs.variables;
  json bindings = json::array();
  for (const auto& row : rs.rows) {
    json b = json::object();
    for (const auto& [name, term] : row) {
      json t;
      switch (term.kind) {
        case RdfTerm::Kind::Iri: t["type"] = "uri"; break;
        case RdfTerm::Kind::Literal: t["type"] = "literal"; break;
        case RdfTerm::Kind::Blank: t["type"] = "bnode"; break;
      }
      t["value"] = term.value;
      if (term.datatype) t["datatype"] = *term.datatype;
      if (term.language) t["xml:lang"] = *term.language;
      b[name] = std::move(t);
    }
    bindings.push_back(std::move(b));
  }
  doc["results"]["bindings"] = std::move(bindings);
  return doc.dump();
}

}  // namespace sqa
