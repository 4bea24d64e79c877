#pragma once

// Fixture authors and the canned SPARQL responses a mock endpoint needs
// to serve them. The response bodies are built here from the fixture
// ground truth, independently of the extractor code under test.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "scholarqa/dblp.hpp"
#include "scholarqa/semopenalex.hpp"

namespace sqatest {

using nlohmann::ordered_json;

struct FixturePublication {
  std::string node;
  std::string title;
  std::optional<std::string> venue;
  std::optional<int> year;
  std::vector<std::string> coauthors;  // excluding the subject author
};

struct FixtureAuthor {
  std::string dblp_uri;
  std::string name;
  std::optional<std::string> orcid;
  bool orcid_in_semoa = true;
  std::vector<FixturePublication> publications;

  std::string semoa_iri;
  std::optional<std::string> works_count;
  std::optional<std::string> cited_by_count;
  std::optional<std::string> h_index;
  std::optional<std::string> i10_index;
  std::optional<std::string> mean_citedness;

  std::optional<std::string> institution_iri;
  std::optional<std::string> institution_name;
  std::optional<std::string> institution_type;
  std::optional<std::string> institution_cited_by;
  std::optional<std::string> institution_works;
};

inline std::string subst(std::string text, const std::string& key,
                         const std::string& value) {
  const std::string token = "{" + key + "}";
  size_t pos;
  while ((pos = text.find(token)) != std::string::npos) {
    text.replace(pos, token.size(), value);
  }
  return text;
}

inline ordered_json term_uri(const std::string& v) {
  return {{"type", "uri"}, {"value", v}};
}

inline ordered_json term_lit(const std::string& v) {
  return {{"type", "literal"}, {"value", v}};
}

inline std::string results_doc(const std::vector<std::string>& vars,
                               const std::vector<ordered_json>& bindings) {
  ordered_json doc;
  doc["head"]["vars"] = vars;
  doc["results"]["bindings"] = bindings;
  return doc.dump();
}

/// Exact query text -> response body, for every query the extractors
/// will issue against this fixture set.
inline std::map<std::string, std::string> canned_responses(
    const std::vector<FixtureAuthor>& authors) {
  const auto dblp_tpl = sqa::DblpQueryTemplates::defaults();
  const auto semoa_tpl = sqa::SemoaQueryTemplates::defaults();
  std::map<std::string, std::string> out;

  for (const auto& a : authors) {
    // author name + orcid
    {
      ordered_json row;
      row["name"] = term_lit(a.name);
      if (a.orcid) row["orcid"] = term_uri(*a.orcid);
      out[subst(dblp_tpl.author, "author_uri", a.dblp_uri)] =
          results_doc({"name", "orcid"}, {row});
    }
    // publications: one row per (publication, author-on-it)
    {
      std::vector<ordered_json> rows;
      for (const auto& p : a.publications) {
        std::vector<std::string> everyone = p.coauthors;
        everyone.push_back(a.name);  // graph rows include the subject
        for (const auto& who : everyone) {
          ordered_json row;
          row["pub"] = term_uri(p.node);
          row["title"] = term_lit(p.title);
          if (p.venue) row["venue"] = term_lit(*p.venue);
          if (p.year) row["year"] = term_lit(std::to_string(*p.year));
          row["coauthor"] = term_lit(who);
          rows.push_back(std::move(row));
        }
      }
      out[subst(dblp_tpl.publications, "author_uri", a.dblp_uri)] =
          results_doc({"pub", "title", "venue", "year", "coauthor"}, rows);
    }
    // orcid bridge
    if (a.orcid) {
      std::vector<ordered_json> rows;
      if (a.orcid_in_semoa) {
        ordered_json row;
        row["author"] = term_uri(a.semoa_iri);
        rows.push_back(std::move(row));
      }
      out[subst(semoa_tpl.author_by_orcid, "orcid", *a.orcid)] =
          results_doc({"author"}, rows);
    }
    // author metrics
    if (a.orcid_in_semoa && !a.semoa_iri.empty()) {
      ordered_json row;
      row["name"] = term_lit(a.name);
      if (a.works_count) row["worksCount"] = term_lit(*a.works_count);
      if (a.cited_by_count) row["citedByCount"] = term_lit(*a.cited_by_count);
      if (a.h_index) row["hIndex"] = term_lit(*a.h_index);
      if (a.i10_index) row["i10Index"] = term_lit(*a.i10_index);
      if (a.mean_citedness) row["meanCitedness"] = term_lit(*a.mean_citedness);
      if (a.institution_iri) {
        row["institution"] = term_uri(*a.institution_iri);
        if (a.institution_name)
          row["institutionName"] = term_lit(*a.institution_name);
      }
      out[subst(semoa_tpl.author_metrics, "author_iri", a.semoa_iri)] =
          results_doc({"name", "worksCount", "citedByCount", "hIndex",
                       "i10Index", "meanCitedness", "institution",
                       "institutionName"},
                      {row});
    }
    // institution metrics
    if (a.institution_iri) {
      ordered_json row;
      row["name"] = term_lit(a.institution_name.value_or("?"));
      if (a.institution_type) row["type"] = term_lit(*a.institution_type);
      if (a.institution_cited_by)
        row["citedByCount"] = term_lit(*a.institution_cited_by);
      if (a.institution_works)
        row["worksCount"] = term_lit(*a.institution_works);
      out[subst(semoa_tpl.institution_metrics, "institution_iri",
                *a.institution_iri)] =
          results_doc({"name", "type", "citedByCount", "worksCount"}, {row});
    }
  }
  return out;
}

/// Ten fixture authors; author 9 has an ORCID that is absent from the
/// SemOpenAlex side, author 7 has no ORCID at all.
inline std::vector<FixtureAuthor> ten_author_fixture() {
  std::vector<FixtureAuthor> authors;
  for (int i = 0; i < 10; ++i) {
    FixtureAuthor a;
    const std::string n = std::to_string(i);
    a.dblp_uri = "https://dblp.org/pid/00/Fixture" + n;
    a.name = "Author Number" + n;
    if (i != 7) {
      a.orcid = "https://orcid.org/0000-0002-0000-000" + n;
    }
    a.orcid_in_semoa = (i != 9);
    a.semoa_iri = "https://semopenalex.org/author/A" + n;
    a.works_count = std::to_string(50 + i);
    a.cited_by_count = std::to_string(1000 + 13 * i);
    a.h_index = std::to_string(10 + i);
    if (i % 3 != 0) a.i10_index = std::to_string(5 + i);
    a.mean_citedness = "3.40506339073181" + n;
    if (i % 4 != 1) {
      a.institution_iri = "https://semopenalex.org/institution/I" + n;
      a.institution_name = "University Number" + n;
      a.institution_type = "education";
      a.institution_cited_by = std::to_string(100000 + i);
      a.institution_works = std::to_string(9000 + i);
    }
    a.publications.push_back({"https://dblp.org/rec/conf/x/P" + n + "a",
                              "Paper Alpha " + n,
                              "JACM",
                              2020,
                              {"Coauthor One"}});
    a.publications.push_back({"https://dblp.org/rec/conf/x/P" + n + "b",
                              "Paper Beta " + n,
                              std::nullopt,
                              i == 4 ? std::optional<int>{} : std::optional<int>{2018},
                              {"Coauthor One", "Coauthor Two"}});
    authors.push_back(std::move(a));
  }
  return authors;
}

}  // namespace sqatest
