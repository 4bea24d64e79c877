#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scholarqa/dblp.hpp"  // WarningSink
#include "scholarqa/http.hpp"

namespace sqa {

/// casefold + whitespace collapse; the key normalization for the corpus.
std::string normalize_name(const std::string& name);

/// Name -> description map keyed by normalized name; the original key is
/// kept alongside for tie-breaking.
class WikiCorpus {
 public:
  WikiCorpus() = default;

  static WikiCorpus load(const std::filesystem::path& path,
                         WarningSink warn = nullptr);
  static WikiCorpus parse(const std::string& text, WarningSink warn = nullptr);

  size_t size() const { return entries_.size(); }

  /// Best key by similarity, at or above threshold; ties go to the
  /// lexicographically smallest original key.
  std::optional<std::string> lookup_fuzzy(const std::string& name,
                                          double threshold) const;

 private:
  struct Entry {
    std::string original_key;
    std::string description;
  };
  std::map<std::string, Entry> entries_;  // normalized key -> entry
};

/// Jaro-Winkler similarity on casefolded names, in [0, 1].
double name_similarity(const std::string& a, const std::string& b);

struct WikiSnippet {
  enum class Source { Corpus, Live, None };

  std::string subject_name;
  Source source = Source::None;
  std::string summary;

  bool operator==(const WikiSnippet&) const = default;
};

/// Pluggable live page source; the default hits a wiki REST summary
/// endpoint and returns the plain-text extract.
class PageSource {
 public:
  virtual ~PageSource() = default;
  /// nullopt means "no such page"; transport failures throw.
  virtual std::optional<std::string> fetch(const std::string& name) = 0;
};

std::unique_ptr<PageSource> make_rest_page_source(
    std::shared_ptr<HttpTransport> transport, std::string base_url,
    std::chrono::seconds timeout = std::chrono::seconds{30});

/// Casefolded question tokens minus stopwords and punctuation,
/// deduplicated, original order kept.
std::vector<std::string> extract_keywords(const std::string& question);

/// Sentence boundaries: `.`, `!` or `?` followed by whitespace and an
/// uppercase letter, or end of text.
std::vector<std::string> split_sentences(const std::string& text);

/// Keeps exactly the sentences containing at least one keyword as a
/// casefolded substring, joined in original order. Empty keywords give
/// an empty summary.
std::string filter_sentences(const std::string& text,
                             const std::vector<std::string>& keywords);

}  // namespace sqa
