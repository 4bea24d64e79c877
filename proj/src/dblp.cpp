#include "scholarqa/dblp.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "assets_gen.hpp"
#include "scholarqa/dataset.hpp"
#include "scholarqa/errors.hpp"
#include "text_util.hpp"

namespace sqa {

bool is_valid_orcid(const std::string& iri) {
  constexpr std::string_view prefix = "https://orcid.org/";
  if (!detail::starts_with(iri, prefix)) return false;
  std::string_view rest = std::string_view(iri).substr(prefix.size());
  // 16 characters in four hyphenated groups, last may be X.
  if (rest.size() != 19) return false;
  for (size_t i = 0; i < rest.size(); ++i) {
    if (i == 4 || i == 9 || i == 14) {
      if (rest[i] != '-') return false;
    } else if (!std::isdigit(static_cast<unsigned char>(rest[i])) &&
               !(i == 18 && rest[i] == 'X')) {
      return false;
    }
  }
  return true;
}

DblpQueryTemplates DblpQueryTemplates::defaults() {
  return {assets::k_dblp_author_rq, assets::k_dblp_publications_rq};
}

DblpExtractor::DblpExtractor(const SparqlClient& client, std::string endpoint,
                             DblpQueryTemplates templates, WarningSink warn)
    : client_(client),
      endpoint_(std::move(endpoint)),
      templates_(std::move(templates)),
      warn_(std::move(warn)) {}

DblpAuthor DblpExtractor::fetch_author_profile(const std::string& author_uri) const {
  if (!detail::starts_with(author_uri, kDblpPidPrefix)) {
    throw Error(ErrorKind::AuthorNotFound,
                author_uri + " is not a DBLP pid URI");
  }

  ResultSet author_rs;
  try {
    author_rs = client_.execute(
        {detail::replace_all(templates_.author, "{author_uri}", author_uri),
         endpoint_});
  } catch (const Error& e) {
    throw Error(ErrorKind::EndpointError, e.what());
  }
  if (author_rs.rows.empty()) {
    throw Error(ErrorKind::AuthorNotFound, author_uri);
  }

  DblpAuthor author;
  author.author_uri = author_uri;
  std::set<std::string> orcids;
  for (const auto& row : author_rs.rows) {
    if (auto it = row.find("name"); it != row.end() && author.name.empty()) {
      author.name = it->second.value;
    }
    if (auto it = row.find("orcid"); it != row.end()) {
      if (is_valid_orcid(it->second.value)) {
        orcids.insert(it->second.value);
      } else if (warn_) {
        warn_("ignoring malformed ORCID '" + it->second.value + "' on " +
              author_uri);
      }
    }
  }
  if (!orcids.empty()) {
    author.orcid = *orcids.begin();  // lexicographically smallest
    if (orcids.size() > 1 && warn_) {
      warn_(author_uri + " carries " + std::to_string(orcids.size()) +
            " ORCIDs; using " + *author.orcid);
    }
  }

  ResultSet pub_rs;
  try {
    pub_rs = client_.execute(
        {detail::replace_all(templates_.publications, "{author_uri}", author_uri),
         endpoint_});
  } catch (const Error& e) {
    throw Error(ErrorKind::EndpointError, e.what());
  }

  // Rows arrive one per (publication, coauthor); regroup by the
  // publication node, then dedup by (title, year).
  struct Partial {
    Publication pub;
    std::set<std::string> coauthors;
  };
  std::map<std::string, Partial> by_node;
  std::vector<std::string> node_order;
  for (const auto& row : pub_rs.rows) {
    auto pub_it = row.find("pub");
    auto title_it = row.find("title");
    if (pub_it == row.end() || title_it == row.end()) continue;
    if (title_it->second.value.empty()) continue;
    auto [it, inserted] = by_node.try_emplace(pub_it->second.value);
    if (inserted) {
      node_order.push_back(pub_it->second.value);
      it->second.pub.title = title_it->second.value;
      if (auto v = row.find("venue"); v != row.end()) {
        it->second.pub.venue = v->second.value;
      }
      if (auto y = row.find("year"); y != row.end()) {
        try {
          int year = std::stoi(y->second.value);
          if (year >= 1900 && year <= 2100) it->second.pub.year = year;
        } catch (const std::exception&) {
          // non-numeric year literal: treat as absent
        }
      }
    }
    if (auto c = row.find("coauthor"); c != row.end()) {
      if (c->second.value != author.name) {
        it->second.coauthors.insert(c->second.value);
      }
    }
  }

  std::set<std::pair<std::string, int>> seen;
  for (const auto& node : node_order) {
    auto& partial = by_node.at(node);
    partial.pub.coauthors.assign(partial.coauthors.begin(),
                                 partial.coauthors.end());
    auto key = std::make_pair(partial.pub.title, partial.pub.year.value_or(-1));
    if (seen.insert(key).second) {
      author.publications.push_back(std::move(partial.pub));
    }
  }

  // Year-descending, absent years last, title ascending as tiebreak.
  std::sort(author.publications.begin(), author.publications.end(),
            [](const Publication& a, const Publication& b) {
              int ya = a.year.value_or(-1);
              int yb = b.year.value_or(-1);
              if (ya != yb) return ya > yb;
              return a.title < b.title;
            });
  return author;
}

}  // namespace sqa
