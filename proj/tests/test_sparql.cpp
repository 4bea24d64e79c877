#include <doctest.h>

#include <filesystem>

#include "scholarqa/client.hpp"
#include "scholarqa/errors.hpp"
#include "scholarqa/sparql.hpp"
#include "support/mock_transport.hpp"

using namespace sqa;
using namespace sqatest;

namespace {

const char* kOneBinding = R"({
  "head": {"vars": ["a"]},
  "results": {"bindings": [{"a": {"type": "literal", "value": "x"}}]}
})";

const char* kEmpty = R"({
  "head": {"vars": ["a", "b"]},
  "results": {"bindings": []}
})";

std::filesystem::path temp_dir(const char* name) {
  auto dir = std::filesystem::temp_directory_path() / "sqa_tests" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("parses empty and single-binding result documents") {
  ResultSet empty = parse_results_json(kEmpty);
  CHECK(empty.variables == std::vector<std::string>{"a", "b"});
  CHECK(empty.rows.empty());

  ResultSet one = parse_results_json(kOneBinding);
  REQUIRE(one.rows.size() == 1);
  CHECK(one.rows[0].at("a") == RdfTerm::literal("x"));
}

TEST_CASE("parses typed and tagged literals, iris and bnodes") {
  const char* doc = R"({
    "head": {"vars": ["n", "l", "i", "b"]},
    "results": {"bindings": [{
      "n": {"type": "literal", "value": "3.5",
            "datatype": "http://www.w3.org/2001/XMLSchema#decimal"},
      "l": {"type": "literal", "value": "hi", "xml:lang": "en"},
      "i": {"type": "uri", "value": "https://example.org/x"},
      "b": {"type": "bnode", "value": "b0"}
    }]}
  })";
  ResultSet rs = parse_results_json(doc);
  const auto& row = rs.rows[0];
  CHECK(row.at("n").datatype == "http://www.w3.org/2001/XMLSchema#decimal");
  CHECK(row.at("l").language == "en");
  CHECK(row.at("i").kind == RdfTerm::Kind::Iri);
  CHECK(row.at("b").kind == RdfTerm::Kind::Blank);
}

TEST_CASE("parses ASK results") {
  ResultSet rs = parse_results_json(R"({"head": {}, "boolean": true})");
  CHECK(rs.boolean == true);
}

TEST_CASE("rejects malformed result documents") {
  CHECK_THROWS_AS(parse_results_json("not json"), Error);
  CHECK_THROWS_AS(parse_results_json(R"({"head": {}})"), Error);
  // datatype and language are mutually exclusive
  const char* both = R"({
    "head": {"vars": ["a"]},
    "results": {"bindings": [{"a": {"type": "literal", "value": "x",
      "datatype": "d", "xml:lang": "en"}}]}
  })";
  CHECK_THROWS_AS(parse_results_json(both), Error);
  // row binding an undeclared variable
  const char* undeclared = R"({
    "head": {"vars": ["a"]},
    "results": {"bindings": [{"z": {"type": "literal", "value": "x"}}]}
  })";
  CHECK_THROWS_AS(parse_results_json(undeclared), Error);
}

TEST_CASE("parser round-trips fixture documents") {
  for (const char* doc : {kOneBinding, kEmpty}) {
    ResultSet once = parse_results_json(doc);
    ResultSet twice = parse_results_json(serialize_results_json(once));
    CHECK(once == twice);
  }
}

TEST_CASE("cache_key is deterministic and discriminates") {
  SparqlQuery q1{"SELECT * WHERE { ?s ?p ?o }", "https://example.org/sparql"};
  SparqlQuery q2 = q1;
  CHECK(cache_key(q1) == cache_key(q2));

  q2.text.back() = 'x';
  CHECK(cache_key(q1) != cache_key(q2));

  SparqlQuery q3 = q1;
  q3.endpoint = "https://other.example.org/sparql";
  CHECK(cache_key(q1) != cache_key(q3));
}

TEST_CASE("execute parses results and caches the response") {
  auto transport = std::make_shared<MockSparqlTransport>(
      std::map<std::string, std::string>{{"SELECT 1", kOneBinding}});
  auto cache = std::make_shared<QueryCache>(temp_dir("cache_hit"));
  SparqlClient client(transport, cache, {.attempts = 1});

  SparqlQuery query{"SELECT 1", "http://mock/sparql"};
  ResultSet first = client.execute(query);
  REQUIRE(first.rows.size() == 1);
  CHECK(transport->post_count == 1);

  // second call served from cache, no network traffic
  ResultSet second = client.execute(query);
  CHECK(second == first);
  CHECK(transport->post_count == 1);
}

TEST_CASE("offline mode with a cold cache refuses to touch the network") {
  auto transport = std::make_shared<MockSparqlTransport>(
      std::map<std::string, std::string>{});
  auto cache = std::make_shared<QueryCache>(temp_dir("cache_offline"));
  SparqlClient client(transport, cache, {.attempts = 1}, /*offline=*/true);
  try {
    client.execute({"SELECT 1", "http://mock/sparql"});
    FAIL("expected Disabled");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Disabled);
  }
  CHECK(transport->post_count == 0);
}

TEST_CASE("retries transient failures, gives up on repeated ones") {
  RetryPolicy fast{.attempts = 3, .initial_backoff = std::chrono::milliseconds(1)};

  auto flaky = std::make_shared<ScriptedTransport>(std::vector<ScriptedTransport::Handler>{
      [] { return HttpResponse{503, "busy"}; },
      [] { return HttpResponse{200, kOneBinding}; },
  });
  SparqlClient client(flaky, nullptr, fast);
  CHECK(client.execute({"q", "http://mock/s"}).rows.size() == 1);
  CHECK(flaky->calls == 2);

  auto dead = std::make_shared<ScriptedTransport>(std::vector<ScriptedTransport::Handler>{
      []() -> HttpResponse { throw Error(ErrorKind::NetworkError, "refused"); },
  });
  SparqlClient client2(dead, nullptr, fast);
  CHECK_THROWS_AS(client2.execute({"q", "http://mock/s"}), Error);
  CHECK(dead->calls == 3);
}

TEST_CASE("4xx responses are not retried") {
  auto bad = std::make_shared<ScriptedTransport>(std::vector<ScriptedTransport::Handler>{
      [] { return HttpResponse{400, "bad query"}; },
  });
  SparqlClient client(bad, nullptr,
                      {.attempts = 3, .initial_backoff = std::chrono::milliseconds(1)});
  try {
    client.execute({"q", "http://mock/s"});
    FAIL("expected HttpError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::HttpError);
  }
  CHECK(bad->calls == 1);
}
