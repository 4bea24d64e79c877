#include <doctest.h>

#include <set>

#include "scholarqa/errors.hpp"
#include "scholarqa/llm.hpp"
#include "support/mock_transport.hpp"

using namespace sqa;
using namespace sqatest;

TEST_CASE("stub backend modes") {
  StubBackend canned(StubBackend::Mode::Canned, {{"q1", "2000"}});
  CHECK(canned.complete("q1", "whatever") == "2000");
  CHECK(canned.complete("q2", "whatever") == "Do not know");

  StubBackend echo(StubBackend::Mode::Echo);
  CHECK(echo.complete("id", "  some prompt \n") == "some prompt");

  StubBackend id_echo(StubBackend::Mode::IdEcho);
  CHECK(id_echo.complete("the-id", "prompt") == "the-id");
}

TEST_CASE("http backend parses the chat-completion shape and trims") {
  auto transport = std::make_shared<ScriptedTransport>(
      std::vector<ScriptedTransport::Handler>{[] {
        return HttpResponse{
            200, R"({"choices": [{"message": {"content": "  2000 \n"}}]})"};
      }});
  auto backend = make_http_backend(transport, {.endpoint = "http://mock/v1/chat/completions",
                                               .model_id = "m"});
  CHECK(backend->complete("id", "p") == "2000");
}

TEST_CASE("http backend surfaces failures as BackendError") {
  auto transport = std::make_shared<ScriptedTransport>(
      std::vector<ScriptedTransport::Handler>{
          [] { return HttpResponse{500, "oops"}; },
          []() -> HttpResponse { throw Error(ErrorKind::NetworkError, "refused"); },
          [] { return HttpResponse{200, "not json"}; },
      });
  auto backend = make_http_backend(transport, {.endpoint = "http://mock/v1",
                                               .model_id = "m"});
  for (int i = 0; i < 3; ++i) {
    try {
      backend->complete("id", "p");
      FAIL("expected BackendError");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::BackendError);
    }
  }
}

TEST_CASE("submission order is a seed-determined permutation") {
  auto order = submission_order(10, 42);
  CHECK(order == submission_order(10, 42));
  CHECK(order != submission_order(10, 43));

  std::set<size_t> unique(order.begin(), order.end());
  CHECK(unique.size() == 10);

  CHECK(submission_order(1, 7) == std::vector<size_t>{0});
  CHECK(submission_order(0, 7).empty());
}

namespace {

class IdInPromptBackend : public CompletionBackend {
 public:
  std::string complete(const std::string&, const std::string& prompt) override {
    // prompt embeds the id; answering with it exposes any misassociation
    return prompt.substr(prompt.find(':') + 1);
  }
};

class FailOnBackend : public CompletionBackend {
 public:
  explicit FailOnBackend(std::string bad_id) : bad_id_(std::move(bad_id)) {}
  std::string complete(const std::string& id, const std::string&) override {
    if (id == bad_id_) throw Error(ErrorKind::BackendError, "canned failure");
    return "ok-" + id;
  }
  std::string bad_id_;
};

}  // namespace

TEST_CASE("batch results are re-associated for any seed") {
  std::vector<BatchItem> items;
  for (int i = 0; i < 17; ++i) {
    const std::string id = "item-" + std::to_string(i);
    items.push_back({id, "prompt:" + id});
  }
  IdInPromptBackend backend;
  for (uint64_t seed : {0ULL, 1ULL, 42ULL, 999ULL}) {
    auto results = complete_batch(backend, items, seed, 4);
    REQUIRE(results.size() == items.size());
    for (size_t i = 0; i < items.size(); ++i) {
      CHECK(results[i].id == items[i].id);
      CHECK(results[i].answer == items[i].id);
    }
  }
}

TEST_CASE("a single failing prompt does not abort the batch") {
  std::vector<BatchItem> items = {{"a", "p"}, {"b", "p"}, {"c", "p"}};
  FailOnBackend backend("b");
  auto results = complete_batch(backend, items, 5, 2);
  REQUIRE(results.size() == 3);
  CHECK(results[0].answer == "ok-a");
  CHECK(!results[1].answer.has_value());
  CHECK(results[1].error.find("canned failure") != std::string::npos);
  CHECK(results[2].answer == "ok-c");
}

TEST_CASE("batch over matching stub equals unpermuted run") {
  std::vector<BatchItem> items = {{"x", "p"}, {"y", "p"}, {"z", "p"}};
  StubBackend canned(StubBackend::Mode::Canned,
                     {{"x", "1"}, {"y", "2"}, {"z", "3"}});
  auto seeded = complete_batch(canned, items, 1234, 1);
  auto identity = complete_batch(canned, items, 0, 1);
  REQUIRE(seeded.size() == identity.size());
  for (size_t i = 0; i < seeded.size(); ++i) {
    CHECK(seeded[i].id == identity[i].id);
    CHECK(seeded[i].answer == identity[i].answer);
  }
}
