#include "scholarqa/pipeline.hpp"

#include <atomic>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "scholarqa/dblp.hpp"
#include "scholarqa/errors.hpp"
#include "scholarqa/prompting.hpp"
#include "scholarqa/semopenalex.hpp"
#include "scholarqa/wiki.hpp"
#include "text_util.hpp"

namespace sqa {

using json = nlohmann::ordered_json;

namespace {

bool json_bool(const json& obj, const char* key, bool fallback) {
  auto it = obj.find(key);
  return it != obj.end() && !it->is_null() ? it->get<bool>() : fallback;
}

std::string json_str(const json& obj, const char* key,
                     const std::string& fallback = "") {
  auto it = obj.find(key);
  return it != obj.end() && !it->is_null() ? it->get<std::string>() : fallback;
}

template <typename T>
T json_num(const json& obj, const char* key, T fallback) {
  auto it = obj.find(key);
  return it != obj.end() && !it->is_null() ? it->get<T>() : fallback;
}

// ---- context (de)serialization ----

json to_json(const NumericLiteral& lit) { return lit.lexical; }

std::optional<NumericLiteral> numeric_from_json(const json& obj,
                                                const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  NumericLiteral lit;
  lit.lexical = it->get<std::string>();
  lit.value = std::stod(lit.lexical);
  return lit;
}

json to_json(const DblpAuthor& author) {
  json obj;
  obj["author_uri"] = author.author_uri;
  obj["name"] = author.name;
  if (author.orcid) obj["orcid"] = *author.orcid;
  json pubs = json::array();
  for (const auto& pub : author.publications) {
    json p;
    p["title"] = pub.title;
    if (pub.venue) p["venue"] = *pub.venue;
    if (pub.year) p["year"] = *pub.year;
    p["coauthors"] = pub.coauthors;
    pubs.push_back(std::move(p));
  }
  obj["publications"] = std::move(pubs);
  return obj;
}

DblpAuthor dblp_from_json(const json& obj) {
  DblpAuthor author;
  author.author_uri = json_str(obj, "author_uri");
  author.name = json_str(obj, "name");
  if (obj.contains("orcid")) author.orcid = obj["orcid"].get<std::string>();
  for (const auto& p : obj.value("publications", json::array())) {
    Publication pub;
    pub.title = json_str(p, "title");
    if (p.contains("venue")) pub.venue = p["venue"].get<std::string>();
    if (p.contains("year")) pub.year = p["year"].get<int>();
    pub.coauthors = p.value("coauthors", std::vector<std::string>{});
    author.publications.push_back(std::move(pub));
  }
  return author;
}

json to_json(const AuthorMetrics& m) {
  json obj;
  obj["semoa_author_iri"] = m.semoa_author_iri;
  obj["name"] = m.name;
  if (m.works_count) obj["works_count"] = to_json(*m.works_count);
  if (m.cited_by_count) obj["cited_by_count"] = to_json(*m.cited_by_count);
  if (m.h_index) obj["h_index"] = to_json(*m.h_index);
  if (m.i10_index) obj["i10_index"] = to_json(*m.i10_index);
  if (m.two_yr_mean_citedness)
    obj["two_yr_mean_citedness"] = to_json(*m.two_yr_mean_citedness);
  if (m.institution_iri) obj["institution_iri"] = *m.institution_iri;
  if (m.institution_name) obj["institution_name"] = *m.institution_name;
  return obj;
}

AuthorMetrics author_metrics_from_json(const json& obj) {
  AuthorMetrics m;
  m.semoa_author_iri = json_str(obj, "semoa_author_iri");
  m.name = json_str(obj, "name");
  m.works_count = numeric_from_json(obj, "works_count");
  m.cited_by_count = numeric_from_json(obj, "cited_by_count");
  m.h_index = numeric_from_json(obj, "h_index");
  m.i10_index = numeric_from_json(obj, "i10_index");
  m.two_yr_mean_citedness = numeric_from_json(obj, "two_yr_mean_citedness");
  if (obj.contains("institution_iri"))
    m.institution_iri = obj["institution_iri"].get<std::string>();
  if (obj.contains("institution_name"))
    m.institution_name = obj["institution_name"].get<std::string>();
  return m;
}

json to_json(const InstitutionMetrics& m) {
  json obj;
  obj["institution_iri"] = m.institution_iri;
  obj["name"] = m.name;
  if (m.institution_type) obj["institution_type"] = *m.institution_type;
  if (m.cited_by_count) obj["cited_by_count"] = to_json(*m.cited_by_count);
  if (m.works_count) obj["works_count"] = to_json(*m.works_count);
  return obj;
}

InstitutionMetrics institution_metrics_from_json(const json& obj) {
  InstitutionMetrics m;
  m.institution_iri = json_str(obj, "institution_iri");
  m.name = json_str(obj, "name");
  if (obj.contains("institution_type"))
    m.institution_type = obj["institution_type"].get<std::string>();
  m.cited_by_count = numeric_from_json(obj, "cited_by_count");
  m.works_count = numeric_from_json(obj, "works_count");
  return m;
}

json to_json(const WikiSnippet& s) {
  json obj;
  obj["subject_name"] = s.subject_name;
  switch (s.source) {
    case WikiSnippet::Source::Corpus: obj["source"] = "corpus"; break;
    case WikiSnippet::Source::Live: obj["source"] = "live"; break;
    case WikiSnippet::Source::None: obj["source"] = "none"; break;
  }
  obj["summary"] = s.summary;
  return obj;
}

WikiSnippet wiki_from_json(const json& obj) {
  WikiSnippet s;
  s.subject_name = json_str(obj, "subject_name");
  const std::string source = json_str(obj, "source", "none");
  s.source = source == "corpus"  ? WikiSnippet::Source::Corpus
             : source == "live" ? WikiSnippet::Source::Live
                                : WikiSnippet::Source::None;
  s.summary = json_str(obj, "summary");
  return s;
}

json to_json(const AuthorContext& ctx) {
  json obj = json::object();
  if (ctx.dblp) obj["dblp"] = to_json(*ctx.dblp);
  if (ctx.semoa_author) obj["semoa_author"] = to_json(*ctx.semoa_author);
  if (ctx.semoa_institution)
    obj["semoa_institution"] = to_json(*ctx.semoa_institution);
  if (ctx.wiki_author) obj["wiki_author"] = to_json(*ctx.wiki_author);
  if (ctx.wiki_institution)
    obj["wiki_institution"] = to_json(*ctx.wiki_institution);
  return obj;
}

AuthorContext context_from_json(const json& obj) {
  AuthorContext ctx;
  if (obj.contains("dblp")) ctx.dblp = dblp_from_json(obj["dblp"]);
  if (obj.contains("semoa_author"))
    ctx.semoa_author = author_metrics_from_json(obj["semoa_author"]);
  if (obj.contains("semoa_institution"))
    ctx.semoa_institution = institution_metrics_from_json(obj["semoa_institution"]);
  if (obj.contains("wiki_author"))
    ctx.wiki_author = wiki_from_json(obj["wiki_author"]);
  if (obj.contains("wiki_institution"))
    ctx.wiki_institution = wiki_from_json(obj["wiki_institution"]);
  return ctx;
}

// ---- line-delimited stores ----

std::vector<json> read_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::MissingFile, path.string());
  }
  std::vector<json> lines;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    try {
      lines.push_back(json::parse(line));
    } catch (const json::exception& e) {
      throw Error(ErrorKind::MalformedRecord,
                  path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return lines;
}

void write_lines(const std::filesystem::path& path,
                 const std::vector<std::string>& lines) {
  std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    for (const auto& line : lines) out << line << '\n';
  }
  std::filesystem::rename(tmp, path);
}

void write_jsonl(const std::filesystem::path& path, const std::vector<json>& docs) {
  std::vector<std::string> lines;
  lines.reserve(docs.size());
  for (const auto& doc : docs) lines.push_back(doc.dump());
  write_lines(path, lines);
}

struct SourceStatus {
  std::string state = "missing";  // ok | missing | error
  std::string message;
};

struct ContextRecord {
  std::string id;
  std::map<std::string, SourceStatus> status;
  AuthorContext context;

  bool has_error() const {
    for (const auto& [_, s] : status) {
      if (s.state == "error") return true;
    }
    return false;
  }
};

json to_json(const ContextRecord& rec) {
  json obj;
  obj["id"] = rec.id;
  json status = json::object();
  for (const char* source : {"dblp", "semoa_author", "semoa_institution",
                             "wiki_author", "wiki_institution"}) {
    auto it = rec.status.find(source);
    if (it == rec.status.end()) continue;
    json s;
    s["state"] = it->second.state;
    if (!it->second.message.empty()) s["message"] = it->second.message;
    status[source] = std::move(s);
  }
  obj["status"] = std::move(status);
  obj["context"] = to_json(rec.context);
  return obj;
}

ContextRecord context_record_from_json(const json& obj) {
  ContextRecord rec;
  rec.id = json_str(obj, "id");
  if (obj.contains("status")) {
    for (const auto& [source, s] : obj["status"].items()) {
      rec.status[source] = {json_str(s, "state", "missing"),
                            json_str(s, "message")};
    }
  }
  rec.context = context_from_json(obj.value("context", json::object()));
  return rec;
}

}  // namespace

PipelineConfig PipelineConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::MissingFile, path.string());
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::BadConfig, std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorKind::BadConfig, "config top level is not an object");
  }

  PipelineConfig cfg;
  cfg.dataset_path = json_str(doc, "dataset_path");
  const std::string split = json_str(doc, "split", "train");
  if (split == "train") {
    cfg.split = Split::Train;
  } else if (split == "test") {
    cfg.split = Split::Test;
  } else {
    throw Error(ErrorKind::BadConfig, "split must be train or test");
  }
  cfg.gold_path = json_str(doc, "gold_path");
  if (cfg.gold_path.empty()) cfg.gold_path = cfg.dataset_path;

  cfg.dblp_endpoint = json_str(doc, "dblp_endpoint");
  cfg.semoa_endpoint = json_str(doc, "semoa_endpoint");
  cfg.wiki_corpus_path = json_str(doc, "wiki_corpus_path");
  cfg.wiki_live = json_bool(doc, "wiki_live", false);
  cfg.wiki_live_endpoint =
      json_str(doc, "wiki_live_endpoint", cfg.wiki_live_endpoint);
  cfg.cache_dir = json_str(doc, "cache_dir");
  cfg.bypass_cache = json_bool(doc, "bypass_cache", false);
  cfg.run_dir = json_str(doc, "run_dir", "run");

  cfg.llm_backend = json_str(doc, "llm_backend", "http");
  cfg.llm_stub_answers = json_str(doc, "llm_stub_answers");
  cfg.llm.endpoint = json_str(doc, "llm_endpoint");
  cfg.llm.model_id = json_str(doc, "llm_model", "llama3.1-8b-instruct");
  cfg.llm.temperature = json_num(doc, "llm_temperature", 0.0);
  cfg.llm.max_tokens = json_num(doc, "llm_max_tokens", 256);
  cfg.llm.request_timeout =
      std::chrono::seconds(json_num<int64_t>(doc, "llm_timeout_s", 60));
  if (doc.contains("llm_seed") && !doc["llm_seed"].is_null()) {
    cfg.llm.seed = doc["llm_seed"].get<int64_t>();
  }

  cfg.order_seed = json_num<uint64_t>(doc, "order_seed", 0);
  cfg.concurrency = json_num(doc, "concurrency", 4);
  if (cfg.concurrency < 1) {
    throw Error(ErrorKind::BadConfig, "concurrency must be >= 1");
  }
  cfg.fuzzy_threshold = json_num(doc, "fuzzy_threshold", 0.85);
  cfg.max_context_chars = json_num<size_t>(doc, "max_context_chars", 0);
  cfg.offline = json_bool(doc, "offline", false);
  if (doc.contains("limit") && !doc["limit"].is_null()) {
    cfg.limit = doc["limit"].get<size_t>();
  }
  cfg.retry.attempts = json_num(doc, "retry_attempts", 3);
  cfg.retry.initial_backoff =
      std::chrono::milliseconds(json_num<int64_t>(doc, "retry_backoff_ms", 1000));
  cfg.retry.timeout =
      std::chrono::seconds(json_num<int64_t>(doc, "request_timeout_s", 30));
  return cfg;
}

struct Pipeline::Impl {
  PipelineConfig cfg;
  std::shared_ptr<HttpTransport> transport;
  std::shared_ptr<QueryCache> cache;
  std::unique_ptr<SparqlClient> client;

  explicit Impl(PipelineConfig config, std::shared_ptr<HttpTransport> tr)
      : cfg(std::move(config)),
        transport(tr ? std::move(tr) : make_default_transport()) {
    if (!cfg.cache_dir.empty()) {
      cache = std::make_shared<QueryCache>(cfg.cache_dir);
    }
    client = std::make_unique<SparqlClient>(transport, cache, cfg.retry,
                                            cfg.offline, cfg.bypass_cache);
  }

  std::filesystem::path run_path(const char* name) const {
    return cfg.run_dir / name;
  }

  static void warn(const std::string& message) {
    std::cerr << "warning: " << message << '\n';
  }

  std::vector<QuestionRecord> load_questions() const {
    auto records = load_dataset(cfg.dataset_path, cfg.split);
    if (cfg.limit && records.size() > *cfg.limit) {
      records.resize(*cfg.limit);
    }
    return records;
  }

  std::unique_ptr<CompletionBackend> make_backend() const {
    if (cfg.llm_backend == "stub" || cfg.llm_backend == "stub-canned") {
      std::map<std::string, std::string> canned;
      if (!cfg.llm_stub_answers.empty()) {
        std::ifstream in(cfg.llm_stub_answers, std::ios::binary);
        if (!in) {
          throw Error(ErrorKind::MissingFile, cfg.llm_stub_answers.string());
        }
        json doc = json::parse(in, nullptr, true);
        for (const auto& [k, v] : doc.items()) {
          canned[k] = v.get<std::string>();
        }
      }
      return std::make_unique<StubBackend>(StubBackend::Mode::Canned,
                                           std::move(canned));
    }
    if (cfg.llm_backend == "stub-echo") {
      return std::make_unique<StubBackend>(StubBackend::Mode::Echo);
    }
    if (cfg.llm_backend == "stub-id") {
      return std::make_unique<StubBackend>(StubBackend::Mode::IdEcho);
    }
    if (cfg.llm_backend == "http") {
      if (cfg.offline) {
        throw Error(ErrorKind::BadConfig,
                    "offline run requires a stub llm backend");
      }
      if (cfg.llm.endpoint.empty()) {
        throw Error(ErrorKind::BadConfig, "llm_endpoint is not configured");
      }
      return make_http_backend(transport, cfg.llm);
    }
    throw Error(ErrorKind::BadConfig, "unknown llm_backend '" + cfg.llm_backend + "'");
  }

  ContextRecord extract_one(const QuestionRecord& record,
                            const WikiCorpus* corpus,
                            PageSource* live_source) const {
    ContextRecord rec;
    rec.id = record.id;

    DblpExtractor dblp(*client, cfg.dblp_endpoint,
                       DblpQueryTemplates::defaults(), warn);
    SemoaExtractor semoa(*client, cfg.semoa_endpoint,
                         SemoaQueryTemplates::defaults(), warn);

    try {
      rec.context.dblp = dblp.fetch_author_profile(record.author_dblp_uri);
      rec.status["dblp"] = {"ok", ""};
    } catch (const Error& e) {
      rec.status["dblp"] = {e.kind() == ErrorKind::AuthorNotFound ? "missing" : "error",
                            e.what()};
    }

    if (rec.context.dblp && rec.context.dblp->orcid) {
      try {
        const std::string author_iri =
            semoa.resolve_author_by_orcid(*rec.context.dblp->orcid);
        rec.context.semoa_author = semoa.fetch_author_metrics(author_iri);
        rec.status["semoa_author"] = {"ok", ""};
      } catch (const Error& e) {
        rec.status["semoa_author"] = {
            e.kind() == ErrorKind::OrcidNotInGraph ? "missing" : "error",
            e.what()};
      }
    } else {
      rec.status["semoa_author"] = {"missing", "no ORCID from DBLP"};
    }

    if (rec.context.semoa_author && rec.context.semoa_author->institution_iri) {
      try {
        rec.context.semoa_institution = semoa.fetch_institution_metrics(
            *rec.context.semoa_author->institution_iri);
        rec.status["semoa_institution"] = {"ok", ""};
      } catch (const Error& e) {
        rec.status["semoa_institution"] = {
            e.kind() == ErrorKind::InstitutionNodeNotFound ? "missing" : "error",
            e.what()};
      }
    } else {
      rec.status["semoa_institution"] = {"missing", "no affiliated institution"};
    }

    const auto keywords = extract_keywords(record.question);
    auto lookup = [&](const std::string& name,
                      const char* source_key) -> std::optional<WikiSnippet> {
      if (name.empty()) {
        rec.status[source_key] = {"missing", "no subject name"};
        return std::nullopt;
      }
      WikiSnippet snippet;
      snippet.subject_name = name;
      std::optional<std::string> description;
      if (corpus) {
        description = corpus->lookup_fuzzy(name, cfg.fuzzy_threshold);
        if (description) snippet.source = WikiSnippet::Source::Corpus;
      }
      if (!description && live_source) {
        try {
          description = live_source->fetch(name);
          if (description) snippet.source = WikiSnippet::Source::Live;
        } catch (const Error& e) {
          rec.status[source_key] = {"error", e.what()};
          return std::nullopt;
        }
      }
      if (!description) {
        rec.status[source_key] = {"missing", ""};
        return std::nullopt;
      }
      snippet.summary = filter_sentences(*description, keywords);
      rec.status[source_key] = {"ok", ""};
      return snippet;
    };

    rec.context.wiki_author = lookup(
        rec.context.dblp ? rec.context.dblp->name : "", "wiki_author");
    std::string inst_name;
    if (rec.context.semoa_institution) {
      inst_name = rec.context.semoa_institution->name;
    } else if (rec.context.semoa_author &&
               rec.context.semoa_author->institution_name) {
      inst_name = *rec.context.semoa_author->institution_name;
    }
    rec.context.wiki_institution = lookup(inst_name, "wiki_institution");
    return rec;
  }
};

Pipeline::Pipeline(PipelineConfig config, std::shared_ptr<HttpTransport> transport)
    : impl_(std::make_unique<Impl>(std::move(config), std::move(transport))) {}

Pipeline::~Pipeline() = default;

const PipelineConfig& Pipeline::config() const { return impl_->cfg; }

StageSummary Pipeline::run_extract() {
  const auto& cfg = impl_->cfg;
  auto questions = impl_->load_questions();

  // Resume: keep records that finished without errors.
  std::map<std::string, json> existing;
  if (std::filesystem::exists(impl_->run_path("contexts.jsonl"))) {
    for (auto& doc : read_jsonl(impl_->run_path("contexts.jsonl"))) {
      existing.emplace(json_str(doc, "id"), std::move(doc));
    }
  }

  std::optional<WikiCorpus> corpus;
  if (!cfg.wiki_corpus_path.empty()) {
    corpus = WikiCorpus::load(cfg.wiki_corpus_path, Impl::warn);
  }
  std::unique_ptr<PageSource> live;
  if (cfg.wiki_live && !cfg.offline) {
    live = make_rest_page_source(impl_->transport, cfg.wiki_live_endpoint,
                                 cfg.retry.timeout);
  }

  StageSummary summary;
  summary.total = questions.size();
  std::vector<json> out(questions.size());
  std::atomic<size_t> next{0};
  std::atomic<size_t> failed{0}, skipped{0};

  auto worker = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= questions.size()) return;
      const QuestionRecord& q = questions[i];
      if (auto it = existing.find(q.id); it != existing.end()) {
        ContextRecord prev = context_record_from_json(it->second);
        if (!prev.has_error()) {
          out[i] = it->second;
          skipped.fetch_add(1);
          continue;
        }
      }
      ContextRecord rec = impl_->extract_one(
          q, corpus ? &*corpus : nullptr, live.get());
      if (rec.has_error()) failed.fetch_add(1);
      out[i] = to_json(rec);
    }
  };

  const size_t threads = std::min<size_t>(
      static_cast<size_t>(cfg.concurrency), std::max<size_t>(questions.size(), 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    pool.clear();  // join
  }

  write_jsonl(impl_->run_path("contexts.jsonl"), out);
  summary.failed = failed.load();
  summary.skipped = skipped.load();
  summary.ok = summary.total - summary.failed - summary.skipped;
  std::cerr << "[extract] " << summary.ok << " ok, " << summary.skipped
            << " resumed, " << summary.failed << " with errors\n";
  return summary;
}

StageSummary Pipeline::run_prompt() {
  const auto& cfg = impl_->cfg;
  auto questions = impl_->load_questions();
  std::map<std::string, QuestionRecord> by_id;
  for (auto& q : questions) by_id.emplace(q.id, q);

  auto contexts = read_jsonl(impl_->run_path("contexts.jsonl"));

  // LLM rephrasing only makes sense against a real backend; stub and
  // offline runs keep the original question.
  std::unique_ptr<CompletionBackend> rephraser;
  if (cfg.llm_backend == "http" && !cfg.offline) {
    rephraser = impl_->make_backend();
  }

  StageSummary summary;
  summary.total = contexts.size();
  std::vector<json> out;
  out.reserve(contexts.size());

  PromptOptions options;
  options.max_context_chars = cfg.max_context_chars;

  for (const auto& doc : contexts) {
    ContextRecord rec = context_record_from_json(doc);
    auto q_it = by_id.find(rec.id);
    if (q_it == by_id.end()) {
      Impl::warn("context for unknown question id " + rec.id);
      ++summary.failed;
      continue;
    }
    const QuestionRecord& q = q_it->second;

    json line;
    line["id"] = rec.id;
    if (!rec.context.any_present()) {
      line["skip"] = "EmptyContext";
      out.push_back(std::move(line));
      ++summary.skipped;
      continue;
    }

    AnswerType atype = predict_answer_type(q.question);
    std::string rephrased =
        rephraser ? rephrase_question(q.question, *rephraser) : q.question;
    PromptBundle bundle =
        assemble_prompt(q, rec.context, rephrased, atype, options);
    line["answer_type"] = to_string(bundle.answer_type);
    line["rephrased_question"] = bundle.rephrased_question;
    line["prompt"] = bundle.prompt_text;
    out.push_back(std::move(line));
    ++summary.ok;
  }

  write_jsonl(impl_->run_path("prompts.jsonl"), out);
  std::cerr << "[prompt] " << summary.ok << " prompts, " << summary.skipped
            << " skipped\n";
  return summary;
}

StageSummary Pipeline::run_answer() {
  const auto& cfg = impl_->cfg;
  auto prompts = read_jsonl(impl_->run_path("prompts.jsonl"));

  std::vector<BatchItem> items;
  std::vector<json> skips;
  for (const auto& doc : prompts) {
    if (doc.contains("skip")) {
      json line;
      line["id"] = json_str(doc, "id");
      line["error"] = "skipped: " + json_str(doc, "skip");
      skips.push_back(std::move(line));
      continue;
    }
    items.push_back({json_str(doc, "id"), json_str(doc, "prompt")});
  }

  auto backend = impl_->make_backend();
  auto results = complete_batch(*backend, items, cfg.order_seed, cfg.concurrency);

  StageSummary summary;
  summary.total = prompts.size();
  summary.skipped = skips.size();

  std::vector<json> out;
  out.reserve(prompts.size());
  size_t result_index = 0;
  // Output order equals prompt-store order, skips in place.
  for (const auto& doc : prompts) {
    if (doc.contains("skip")) {
      for (auto& s : skips) {
        if (json_str(s, "id") == json_str(doc, "id")) {
          out.push_back(s);
          break;
        }
      }
      continue;
    }
    const BatchResult& r = results.at(result_index++);
    json line;
    line["id"] = r.id;
    if (r.answer) {
      line["answer"] = *r.answer;
      ++summary.ok;
    } else {
      line["error"] = r.error;
      ++summary.failed;
    }
    out.push_back(std::move(line));
  }

  write_jsonl(impl_->run_path("predictions.jsonl"), out);
  std::cerr << "[answer] " << summary.ok << " answered, " << summary.failed
            << " failed, " << summary.skipped << " skipped\n";
  return summary;
}

EvalReport Pipeline::run_evaluate() {
  const auto& cfg = impl_->cfg;
  auto predictions = read_jsonl(impl_->run_path("predictions.jsonl"));

  auto gold_records = load_dataset(cfg.gold_path, Split::Test);
  std::map<std::string, std::string> gold;
  for (const auto& rec : gold_records) {
    if (rec.gold_answer) gold.emplace(rec.id, *rec.gold_answer);
  }

  std::vector<ItemScore> items;
  std::vector<std::string> unmatched_predictions;
  std::map<std::string, bool> gold_seen;
  for (const auto& [id, _] : gold) gold_seen[id] = false;

  std::vector<std::string> score_lines;
  score_lines.push_back("id\tem\tem_numeric_lenient\tprecision\trecall\tf1");
  for (const auto& doc : predictions) {
    const std::string id = json_str(doc, "id");
    auto g = gold.find(id);
    if (g == gold.end()) {
      unmatched_predictions.push_back(id);
      continue;
    }
    gold_seen[id] = true;
    // Failed predictions score as empty answers.
    const std::string pred = json_str(doc, "answer");
    items.push_back(score_item(id, pred, g->second));
    const ItemScore& s = items.back();
    std::ostringstream line;
    line << id << '\t' << (s.em ? 1 : 0) << '\t' << (s.em_numeric_lenient ? 1 : 0)
         << '\t' << s.f1.precision << '\t' << s.f1.recall << '\t' << s.f1.f1;
    score_lines.push_back(line.str());
  }

  std::vector<std::string> unmatched_gold;
  for (const auto& [id, seen] : gold_seen) {
    if (!seen) unmatched_gold.push_back(id);
  }
  if (!cfg.limit) {
    for (const auto& id : unmatched_gold) {
      Impl::warn("gold id has no prediction: " + id);
    }
  }
  for (const auto& id : unmatched_predictions) {
    Impl::warn("prediction id not in gold file: " + id);
  }

  EvalReport report = aggregate(items);

  json rjson;
  rjson["n"] = report.n;
  rjson["exact_match_pct"] = report.exact_match_pct;
  rjson["exact_match_numeric_lenient_pct"] = report.exact_match_lenient_pct;
  rjson["precision"] = report.precision;
  rjson["recall"] = report.recall;
  rjson["f1"] = report.f1;
  rjson["unmatched_predictions"] = unmatched_predictions;

  write_lines(impl_->run_path("report.json"), {rjson.dump(2)});
  write_lines(impl_->run_path("scores.tsv"), score_lines);

  std::cout << rjson.dump(2) << '\n';
  return report;
}

int Pipeline::run_all() {
  StageSummary extract = run_extract();
  StageSummary prompt = run_prompt();
  StageSummary answer = run_answer();
  run_evaluate();
  const bool partial = extract.failed > 0 || prompt.failed > 0 ||
                       prompt.skipped > 0 || answer.failed > 0 ||
                       answer.skipped > 0;
  return partial ? 2 : 0;
}

}  // namespace sqa
