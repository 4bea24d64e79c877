#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "scholarqa/client.hpp"

namespace sqa {

struct Publication {
  std::string title;
  std::optional<std::string> venue;
  std::optional<int> year;
  std::vector<std::string> coauthors;

  bool operator==(const Publication&) const = default;
};

struct DblpAuthor {
  std::string author_uri;
  std::string name;
  std::optional<std::string> orcid;
  std::vector<Publication> publications;

  bool operator==(const DblpAuthor&) const = default;
};

bool is_valid_orcid(const std::string& iri);

/// Query texts with {author_uri} placeholders; defaults track the live
/// DBLP RDF schema but are plain configuration.
struct DblpQueryTemplates {
  std::string author;
  std::string publications;

  static DblpQueryTemplates defaults();
};

using WarningSink = std::function<void(const std::string&)>;

class DblpExtractor {
 public:
  DblpExtractor(const SparqlClient& client, std::string endpoint,
                DblpQueryTemplates templates = DblpQueryTemplates::defaults(),
                WarningSink warn = nullptr);

  /// Fetches name, ORCID and deduplicated publications. Coauthor lists
  /// exclude the subject author; publications sort year-descending,
  /// absent years last, title ascending within a year.
  DblpAuthor fetch_author_profile(const std::string& author_uri) const;

 private:
  const SparqlClient& client_;
  std::string endpoint_;
  DblpQueryTemplates templates_;
  WarningSink warn_;
};

}  // namespace sqa
