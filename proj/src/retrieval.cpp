#include "ragloop/retrieval.hpp"

#include <chrono>
#include <cmath>
#include <thread>

#include <httplib.h>
#include <json.hpp>

namespace ragloop {

LocalBm25Backend::LocalBm25Backend(const PassageStore& store, const Bm25Index& index,
                                   int max_parallel_queries)
    : store_(store), index_(index), max_parallel_queries_(max_parallel_queries) {}

std::vector<std::vector<RetrievedDoc>> LocalBm25Backend::retrieve(
    const std::vector<std::string>& queries, int k) {
  BatchResult batch = index_.search_batch(queries, k, max_parallel_queries_);
  std::vector<std::vector<RetrievedDoc>> results(queries.size());
  for (std::size_t i = 0; i < batch.hits_per_query.size(); ++i) {
    results[i].reserve(batch.hits_per_query[i].size());
    for (const auto& hit : batch.hits_per_query[i]) {
      const Passage* p = store_.find(hit.passage_id);
      RetrievedDoc doc;
      doc.passage_id = hit.passage_id;
      doc.score = hit.score;
      if (p != nullptr) {
        doc.title = p->title;
        doc.body = p->body;
      }
      results[i].push_back(std::move(doc));
    }
  }
  return results;
}

RemoteSearchBackend::RemoteSearchBackend(RemoteRetrieverConfig config)
    : config_(std::move(config)) {}

std::vector<std::vector<RetrievedDoc>> RemoteSearchBackend::retrieve(
    const std::vector<std::string>& queries, int k) {
  nlohmann::json request;
  request["queries"] = queries;
  request["k"] = k;
  const std::string body = request.dump();

  std::string last_error;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      const double backoff = config_.initial_backoff_seconds * std::pow(2.0, attempt - 1);
      std::this_thread::sleep_for(std::chrono::duration<double>(backoff));
    }
    httplib::Client client(config_.base_url);
    client.set_connection_timeout(std::chrono::duration<double>(config_.timeout_seconds));
    client.set_read_timeout(std::chrono::duration<double>(config_.timeout_seconds));
    auto res = client.Post(config_.path, body, "application/json");
    if (!res) {
      last_error = "transport failure: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 429 || res->status >= 500) {
      last_error = "server returned status " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw RetrieverTransportError("retriever rejected request with status " +
                                    std::to_string(res->status));
    }
    nlohmann::json parsed = nlohmann::json::parse(res->body, nullptr, false);
    if (parsed.is_discarded() || !parsed.contains("results") || !parsed["results"].is_array() ||
        parsed["results"].size() != queries.size()) {
      throw RetrieverTransportError("malformed retriever response");
    }
    std::vector<std::vector<RetrievedDoc>> results(queries.size());
    for (std::size_t i = 0; i < queries.size(); ++i) {
      for (const auto& item : parsed["results"][i]) {
        RetrievedDoc doc;
        doc.passage_id = item.value("passage_id", "");
        doc.title = item.value("title", "");
        doc.body = item.value("body", "");
        doc.score = item.value("score", 0.0);
        results[i].push_back(std::move(doc));
      }
    }
    return results;
  }
  throw RetrieverTransportError("retriever unreachable after " +
                                std::to_string(config_.max_retries + 1) + " attempts: " +
                                last_error);
}

std::string render_document_list(const std::vector<RetrievedDoc>& docs) {
  if (docs.empty()) {
    return kNoResultsSentinel;
  }
  std::string out;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (i > 0) {
      out += ' ';
    }
    out += "Doc " + std::to_string(i + 1) + ": " + docs[i].title + "   " + docs[i].body;
  }
  return out;
}

InformationBlock make_information_block(const std::vector<std::string>& queries,
                                        const std::vector<std::vector<RetrievedDoc>>& results) {
  InformationBlock block;
  block.queries = queries;
  block.documents.reserve(results.size());
  for (const auto& docs : results) {
    block.documents.push_back(render_document_list(docs));
  }
  return block;
}

}  // namespace ragloop
