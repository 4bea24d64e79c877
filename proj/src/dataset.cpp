#include "scholarqa/dataset.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "scholarqa/errors.hpp"
#include "text_util.hpp"

namespace sqa {

using json = nlohmann::ordered_json;

namespace {

std::string require_string(const json& obj, const char* key, size_t index) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw Error(ErrorKind::MalformedRecord,
                "record " + std::to_string(index) + ": missing or non-string '" +
                    key + "'");
  }
  return it->get<std::string>();
}

std::optional<std::string> optional_string(const json& obj, const char* key,
                                           size_t index) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) {
    throw Error(ErrorKind::MalformedRecord,
                "record " + std::to_string(index) + ": non-string '" + key + "'");
  }
  return it->get<std::string>();
}

}  // namespace

std::vector<QuestionRecord> parse_dataset(const std::string& text, Split split) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::MalformedRecord, std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) {
    throw Error(ErrorKind::MalformedRecord, "top level is not an array");
  }

  std::vector<QuestionRecord> records;
  records.reserve(doc.size());
  std::unordered_set<std::string> seen;

  size_t index = 0;
  for (const auto& obj : doc) {
    if (!obj.is_object()) {
      throw Error(ErrorKind::MalformedRecord,
                  "record " + std::to_string(index) + ": not an object");
    }
    QuestionRecord rec;
    rec.id = require_string(obj, "id", index);
    rec.question = require_string(obj, "question", index);
    rec.author_dblp_uri = require_string(obj, "author_dblp_uri", index);
    rec.gold_answer = optional_string(obj, "answer", index);
    rec.gold_answer_type = optional_string(obj, "answer_type", index);

    if (rec.id.empty()) {
      throw Error(ErrorKind::MalformedRecord,
                  "record " + std::to_string(index) + ": empty id");
    }
    if (detail::trim(rec.question).empty()) {
      throw Error(ErrorKind::MalformedRecord,
                  "record " + std::to_string(index) + ": empty question");
    }
    if (!detail::starts_with(rec.author_dblp_uri, kDblpPidPrefix)) {
      throw Error(ErrorKind::MalformedRecord,
                  "record " + std::to_string(index) +
                      ": author_dblp_uri does not begin with " + kDblpPidPrefix);
    }
    if (split == Split::Train && !rec.gold_answer) {
      throw Error(ErrorKind::MalformedRecord,
                  "record " + std::to_string(index) +
                      ": train split requires an answer");
    }
    if (!seen.insert(rec.id).second) {
      throw Error(ErrorKind::DuplicateId, rec.id);
    }
    records.push_back(std::move(rec));
    ++index;
  }
  return records;
}

std::vector<QuestionRecord> load_dataset(const std::filesystem::path& path,
                                         Split split) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::MissingFile, path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dataset(buf.str(), split);
}

std::string serialize_dataset(const std::vector<QuestionRecord>& records) {
  json doc = json::array();
  for (const auto& rec : records) {
    json obj;
    obj["id"] = rec.id;
    obj["question"] = rec.question;
    obj["author_dblp_uri"] = rec.author_dblp_uri;
    if (rec.gold_answer) obj["answer"] = *rec.gold_answer;
    if (rec.gold_answer_type) obj["answer_type"] = *rec.gold_answer_type;
    doc.push_back(std::move(obj));
  }
  return doc.dump(2) + "\n";
}

}  // namespace sqa
