#include <doctest.h>

#include "scholarqa/dataset.hpp"
#include "scholarqa/errors.hpp"

using namespace sqa;

namespace {

const char* kOneRecord = R"([
  {"id": "9a2a668a-89e7-4506-857f-b301bd1d2074",
   "question": "What is the institute where the author of Built-in generation of functional broadside tests graduated from?",
   "author_dblp_uri": "https://dblp.org/pid/p/IrithPomeranz"}
])";

}  // namespace

TEST_CASE("parses a single well-formed record") {
  auto records = parse_dataset(kOneRecord, Split::Test);
  REQUIRE(records.size() == 1);
  CHECK(records[0].id == "9a2a668a-89e7-4506-857f-b301bd1d2074");
  CHECK(records[0].author_dblp_uri == "https://dblp.org/pid/p/IrithPomeranz");
  CHECK(!records[0].gold_answer);
}

TEST_CASE("empty collection gives empty list") {
  CHECK(parse_dataset("[]", Split::Train).empty());
}

TEST_CASE("duplicate ids are rejected") {
  const char* doc = R"([
    {"id": "x", "question": "q1?", "author_dblp_uri": "https://dblp.org/pid/a", "answer": "1"},
    {"id": "x", "question": "q2?", "author_dblp_uri": "https://dblp.org/pid/b", "answer": "2"}
  ])";
  try {
    parse_dataset(doc, Split::Train);
    FAIL("expected DuplicateId");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DuplicateId);
    CHECK(std::string(e.what()).find("x") != std::string::npos);
  }
}

TEST_CASE("train split requires answers, test split does not") {
  const char* doc = R"([
    {"id": "1", "question": "q?", "author_dblp_uri": "https://dblp.org/pid/a"}
  ])";
  CHECK_THROWS_AS(parse_dataset(doc, Split::Train), Error);
  CHECK(parse_dataset(doc, Split::Test).size() == 1);

  const char* with_null = R"([
    {"id": "1", "question": "q?", "author_dblp_uri": "https://dblp.org/pid/a", "answer": null}
  ])";
  CHECK(parse_dataset(with_null, Split::Test).size() == 1);
}

TEST_CASE("records with bad author uri or blank question are rejected") {
  const char* bad_uri = R"([
    {"id": "1", "question": "q?", "author_dblp_uri": "https://example.org/nope", "answer": "a"}
  ])";
  CHECK_THROWS_AS(parse_dataset(bad_uri, Split::Train), Error);

  const char* blank_q = R"([
    {"id": "1", "question": "   ", "author_dblp_uri": "https://dblp.org/pid/a", "answer": "a"}
  ])";
  CHECK_THROWS_AS(parse_dataset(blank_q, Split::Train), Error);
}

TEST_CASE("unknown keys are ignored, answer_type accepted when present") {
  const char* doc = R"([
    {"id": "1", "question": "q?", "author_dblp_uri": "https://dblp.org/pid/a",
     "answer": "42", "answer_type": "number", "extra": [1, 2, 3]}
  ])";
  auto records = parse_dataset(doc, Split::Train);
  REQUIRE(records.size() == 1);
  CHECK(records[0].gold_answer == "42");
  CHECK(records[0].gold_answer_type == "number");
}

TEST_CASE("serialize/reload round trip preserves records and order") {
  const char* doc = R"([
    {"id": "b", "question": "second?", "author_dblp_uri": "https://dblp.org/pid/b", "answer": "2"},
    {"id": "a", "question": "first?", "author_dblp_uri": "https://dblp.org/pid/a", "answer": "1", "answer_type": "number"}
  ])";
  auto records = parse_dataset(doc, Split::Train);
  auto reloaded = parse_dataset(serialize_dataset(records), Split::Train);
  CHECK(records == reloaded);
}

TEST_CASE("missing file") {
  CHECK_THROWS_AS(load_dataset("/nonexistent/path.json", Split::Train), Error);
}
