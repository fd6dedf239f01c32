#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "ragloop/corpus.hpp"

namespace ragloop {

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;
};

struct SearchHit {
  std::string passage_id;
  double score = 0.0;
  int rank = 0;  // 1-based
};

// Positionally aligned per-query results.
struct BatchResult {
  std::vector<std::string> queries;
  std::vector<std::vector<SearchHit>> hits_per_query;
};

struct IndexError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Lowercases and splits on every character outside ASCII [0-9a-z]. No
// stemming, no stop words.
std::vector<std::string> tokenize(const std::string& text);

// Inverted index with BM25 scoring over tokenized title+body. Immutable
// after build; safe for concurrent searches.
class Bm25Index {
 public:
  static Bm25Index build(const PassageStore& store, Bm25Params params = {});

  // Top-k by score, descending, ties broken by ascending passage_id. Only
  // passages with score > 0 are returned, so fewer than k hits means fewer
  // than k passages matched. A query with no tokens yields an empty list.
  std::vector<SearchHit> search(const std::string& query, int k) const;

  // Per-query results identical to search(); queries run concurrently and
  // results are assembled by position. More than max_queries queries is an
  // error.
  BatchResult search_batch(const std::vector<std::string>& queries, int k,
                           int max_queries = 3) const;

  std::size_t num_passages() const { return passage_ids_.size(); }
  std::size_t num_terms() const { return terms_.size(); }
  double average_length() const { return avg_length_; }
  const Bm25Params& params() const { return params_; }
  const std::string& passage_id(std::size_t ordinal) const { return passage_ids_[ordinal]; }

  std::uint64_t document_frequency(const std::string& term) const;
  double idf(const std::string& term) const;

  // fnv1a64 over the full index content; identical stores build identical
  // fingerprints.
  std::string fingerprint() const;

  void save(const std::filesystem::path& path) const;
  static Bm25Index load(const std::filesystem::path& path);

 private:
  Bm25Index() = default;
  void finalize();

  Bm25Params params_;
  double avg_length_ = 0.0;
  std::vector<std::string> passage_ids_;
  std::vector<std::uint32_t> lengths_;  // token count per passage
  std::vector<double> norms_;           // k1 * (1 - b + b * len / avg_len)

  // CSR postings; terms_ sorted lexicographically, postings sorted by
  // ordinal.
  std::vector<std::string> terms_;
  std::vector<double> idf_;
  std::vector<std::uint64_t> offsets_;  // terms_.size() + 1
  std::vector<std::uint32_t> ordinals_;
  std::vector<std::uint32_t> tfs_;
  std::unordered_map<std::string, std::uint32_t> term_index_;
};

}  // namespace ragloop
