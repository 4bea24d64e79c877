#include "scholarqa/wiki.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "assets_gen.hpp"
#include "scholarqa/errors.hpp"
#include "text_util.hpp"

namespace sqa {

using json = nlohmann::ordered_json;

std::string normalize_name(const std::string& name) {
  return detail::collapse_whitespace(detail::casefold(name));
}

WikiCorpus WikiCorpus::parse(const std::string& text, WarningSink warn) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::MalformedRecord,
                std::string("corpus is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorKind::MalformedRecord, "corpus top level is not an object");
  }

  WikiCorpus corpus;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (!it.value().is_string()) {
      throw Error(ErrorKind::MalformedRecord,
                  "corpus value for '" + it.key() + "' is not a string");
    }
    std::string norm = normalize_name(it.key());
    std::string desc = it.value().get<std::string>();
    auto [slot, inserted] = corpus.entries_.try_emplace(norm, Entry{it.key(), desc});
    if (!inserted) {
      // Collision after normalization: keep the longer description.
      if (warn) {
        warn("corpus keys '" + slot->second.original_key + "' and '" + it.key() +
             "' collide after normalization");
      }
      if (desc.size() > slot->second.description.size()) {
        slot->second = Entry{it.key(), std::move(desc)};
      }
    }
  }
  return corpus;
}

WikiCorpus WikiCorpus::load(const std::filesystem::path& path, WarningSink warn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::MissingFile, path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), warn);
}

namespace {

double jaro(const std::string& a, const std::string& b) {
  if (a == b) return 1.0;
  if (a.empty() || b.empty()) return 0.0;
  const size_t la = a.size(), lb = b.size();
  const size_t window = std::max(la, lb) / 2 == 0 ? 0 : std::max(la, lb) / 2 - 1;

  std::vector<bool> ma(la, false), mb(lb, false);
  size_t matches = 0;
  for (size_t i = 0; i < la; ++i) {
    size_t lo = i > window ? i - window : 0;
    size_t hi = std::min(lb, i + window + 1);
    for (size_t j = lo; j < hi; ++j) {
      if (!mb[j] && b[j] == a[i]) {
        ma[i] = mb[j] = true;
        ++matches;
        break;
      }
    }
  }
  if (matches == 0) return 0.0;

  size_t transpositions = 0;
  size_t k = 0;
  for (size_t i = 0; i < la; ++i) {
    if (!ma[i]) continue;
    while (!mb[k]) ++k;
    if (a[i] != b[k]) ++transpositions;
    ++k;
  }
  transpositions /= 2;

  const double m = static_cast<double>(matches);
  return (m / la + m / lb + (m - transpositions) / m) / 3.0;
}

}  // namespace

double name_similarity(const std::string& a, const std::string& b) {
  const std::string fa = detail::casefold(a);
  const std::string fb = detail::casefold(b);
  double j = jaro(fa, fb);
  size_t prefix = 0;
  while (prefix < std::min({fa.size(), fb.size(), size_t{4}}) &&
         fa[prefix] == fb[prefix]) {
    ++prefix;
  }
  return j + prefix * 0.1 * (1.0 - j);
}

std::optional<std::string> WikiCorpus::lookup_fuzzy(const std::string& name,
                                                    double threshold) const {
  if (name.empty()) return std::nullopt;
  const std::string norm = normalize_name(name);

  const Entry* best = nullptr;
  double best_sim = -1.0;
  for (const auto& [key, entry] : entries_) {
    double sim = name_similarity(norm, key);
    // entries_ iterates in key order, so on a tie the lexicographically
    // smallest key wins by keeping the first.
    if (sim > best_sim) {
      best_sim = sim;
      best = &entry;
    }
  }
  if (best && best_sim >= threshold) return best->description;
  return std::nullopt;
}

namespace {

class RestPageSource : public PageSource {
 public:
  RestPageSource(std::shared_ptr<HttpTransport> transport, std::string base_url,
                 std::chrono::seconds timeout)
      : transport_(std::move(transport)),
        base_url_(std::move(base_url)),
        timeout_(timeout) {
    if (!base_url_.empty() && base_url_.back() != '/') base_url_ += '/';
  }

  std::optional<std::string> fetch(const std::string& name) override {
    std::string title;
    for (char c : name) title.push_back(c == ' ' ? '_' : c);
    HttpResponse res = transport_->get(base_url_ + title, {}, timeout_);
    if (res.status == 404) return std::nullopt;
    if (res.status < 200 || res.status >= 300) {
      throw Error(ErrorKind::NetworkError,
                  "page source returned status " + std::to_string(res.status));
    }
    try {
      auto doc = json::parse(res.body);
      if (doc.contains("extract") && doc["extract"].is_string()) {
        return doc["extract"].get<std::string>();
      }
    } catch (const json::exception& e) {
      throw Error(ErrorKind::NetworkError,
                  std::string("page source returned malformed JSON: ") + e.what());
    }
    return std::nullopt;
  }

 private:
  std::shared_ptr<HttpTransport> transport_;
  std::string base_url_;
  std::chrono::seconds timeout_;
};

const std::unordered_set<std::string>& stopwords() {
  static const std::unordered_set<std::string> words = [] {
    std::unordered_set<std::string> set;
    std::istringstream in(assets::k_stopwords_txt);
    std::string word;
    while (std::getline(in, word)) {
      word = detail::trim(word);
      if (!word.empty()) set.insert(word);
    }
    return set;
  }();
  return words;
}

}  // namespace

std::unique_ptr<PageSource> make_rest_page_source(
    std::shared_ptr<HttpTransport> transport, std::string base_url,
    std::chrono::seconds timeout) {
  return std::make_unique<RestPageSource>(std::move(transport),
                                          std::move(base_url), timeout);
}

std::vector<std::string> extract_keywords(const std::string& question) {
  std::vector<std::string> keywords;
  std::unordered_set<std::string> seen;
  std::string token;
  auto flush = [&] {
    if (!token.empty() && !stopwords().contains(token) && seen.insert(token).second) {
      keywords.push_back(token);
    }
    token.clear();
  };
  for (char c : question) {
    if (detail::is_alnum(c)) {
      token.push_back(detail::lower(c));
    } else {
      flush();
    }
  }
  flush();
  return keywords;
}

std::vector<std::string> split_sentences(const std::string& text) {
  std::vector<std::string> sentences;
  size_t start = 0;
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;
    // Boundary: terminator, whitespace, then uppercase or end of text.
    size_t j = i + 1;
    while (j < text.size() && detail::is_space(text[j])) ++j;
    if (j > i + 1 && (j == text.size() || detail::is_upper(text[j]))) {
      sentences.push_back(text.substr(start, i + 1 - start));
      start = j;
      i = j - 1;
    } else if (j == text.size() && i + 1 == text.size()) {
      // Terminator at end of text with no trailing whitespace.
      sentences.push_back(text.substr(start));
      start = text.size();
    }
  }
  if (start < text.size()) {
    std::string tail = detail::trim(text.substr(start));
    if (!tail.empty()) sentences.push_back(std::move(tail));
  }
  return sentences;
}

std::string filter_sentences(const std::string& text,
                             const std::vector<std::string>& keywords) {
  if (keywords.empty()) return "";
  std::string out;
  for (const auto& sentence : split_sentences(text)) {
    const std::string folded = detail::casefold(sentence);
    bool hit = std::any_of(keywords.begin(), keywords.end(),
                           [&](const std::string& kw) {
                             return !kw.empty() &&
                                    folded.find(detail::casefold(kw)) !=
                                        std::string::npos;
                           });
    if (hit) {
      if (!out.empty()) out.push_back(' ');
      out += detail::trim(sentence);
    }
  }
  return out;
}

}  // namespace sqa
