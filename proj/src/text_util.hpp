#pragma once

// Internal string helpers shared across modules. ASCII-only casefold;
// non-ASCII bytes pass through untouched.

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace sqa::detail {

inline char lower(char c) {
  return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

inline bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

inline bool is_upper(char c) {
  return std::isupper(static_cast<unsigned char>(c)) != 0;
}

inline bool is_alnum(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

inline std::string casefold(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), lower);
  return out;
}

inline std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

inline std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool in_space = false;
  for (char c : s) {
    if (is_space(c)) {
      in_space = true;
      continue;
    }
    if (in_space && !out.empty()) out.push_back(' ');
    in_space = false;
    out.push_back(c);
  }
  return out;
}

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (is_space(c)) {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

inline bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

/// Replaces every occurrence of `from` in `s`.
inline std::string replace_all(std::string s, std::string_view from,
                               std::string_view to) {
  size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
  return s;
}

/// True when `phrase` occurs in `text` with non-alphanumeric characters
/// (or string ends) on both sides.
inline bool contains_word_phrase(std::string_view text,
                                 std::string_view phrase) {
  size_t pos = 0;
  while ((pos = text.find(phrase, pos)) != std::string_view::npos) {
    bool left_ok = pos == 0 || !is_alnum(text[pos - 1]);
    size_t end = pos + phrase.size();
    bool right_ok = end == text.size() || !is_alnum(text[end]);
    if (left_ok && right_ok) return true;
    ++pos;
  }
  return false;
}

}  // namespace sqa::detail
