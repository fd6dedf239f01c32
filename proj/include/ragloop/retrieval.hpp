#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ragloop/bm25.hpp"
#include "ragloop/corpus.hpp"
#include "ragloop/protocol.hpp"

namespace ragloop {

struct RetrievedDoc {
  std::string passage_id;
  std::string title;
  std::string body;
  double score = 0.0;
};

struct RetrieverTransportError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The contract every retrieval backend satisfies: one result list per query,
// positionally aligned, each with at most k docs in rank order. Backends
// must tolerate concurrent calls.
class SearchBackend {
 public:
  virtual ~SearchBackend() = default;
  virtual std::vector<std::vector<RetrievedDoc>> retrieve(const std::vector<std::string>& queries,
                                                          int k) = 0;
};

class LocalBm25Backend : public SearchBackend {
 public:
  LocalBm25Backend(const PassageStore& store, const Bm25Index& index,
                   int max_parallel_queries = 3);
  std::vector<std::vector<RetrievedDoc>> retrieve(const std::vector<std::string>& queries,
                                                  int k) override;

 private:
  const PassageStore& store_;
  const Bm25Index& index_;
  int max_parallel_queries_;
};

struct RemoteRetrieverConfig {
  std::string base_url;  // e.g. http://127.0.0.1:8080
  std::string path = "/retrieve";
  double timeout_seconds = 10.0;
  int max_retries = 2;
  double initial_backoff_seconds = 0.1;
};

// JSON-over-HTTP client for the remote retriever protocol:
//   request  {"queries": [string], "k": int}
//   response {"results": [[{"passage_id","title","body","score"}]]}
class RemoteSearchBackend : public SearchBackend {
 public:
  explicit RemoteSearchBackend(RemoteRetrieverConfig config);
  std::vector<std::vector<RetrievedDoc>> retrieve(const std::vector<std::string>& queries,
                                                  int k) override;

 private:
  RemoteRetrieverConfig config_;
};

// "Doc 1: <title>   <body> Doc 2: ..." in rank order; the no-results
// sentinel when the list is empty.
std::string render_document_list(const std::vector<RetrievedDoc>& docs);

InformationBlock make_information_block(const std::vector<std::string>& queries,
                                        const std::vector<std::vector<RetrievedDoc>>& results);

}  // namespace ragloop
