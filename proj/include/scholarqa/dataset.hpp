#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace sqa {

/// One row of the question set. Immutable after load.
struct QuestionRecord {
  std::string id;
  std::string question;
  std::string author_dblp_uri;
  std::optional<std::string> gold_answer;
  std::optional<std::string> gold_answer_type;

  bool operator==(const QuestionRecord&) const = default;
};

enum class Split { Train, Test };

inline constexpr const char* kDblpPidPrefix = "https://dblp.org/pid/";

/// Parses a UTF-8 array-of-objects document. Keys: id, question,
/// author_dblp_uri, optional answer / answer_type; unknown keys ignored.
/// Train split requires a non-null answer on every record.
std::vector<QuestionRecord> parse_dataset(const std::string& text, Split split);

std::vector<QuestionRecord> load_dataset(const std::filesystem::path& path,
                                         Split split);

std::string serialize_dataset(const std::vector<QuestionRecord>& records);

}  // namespace sqa
