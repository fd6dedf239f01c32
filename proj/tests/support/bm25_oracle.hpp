#pragma once

// Brute-force BM25 scorer, independent of the inverted-index path: term
// statistics are recomputed from raw tokenization and every passage is
// scored directly. Shares only the tokenizer (the definition of a term) and
// the scoring formula with the index.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ragloop/bm25.hpp"
#include "ragloop/corpus.hpp"

namespace ragloop::oracle {

struct OracleHit {
  std::string passage_id;
  double score = 0.0;
};

inline std::vector<OracleHit> brute_force_bm25(const PassageStore& store,
                                               const std::string& query, int k,
                                               Bm25Params params = {}) {
  const std::size_t n = store.size();
  std::vector<std::map<std::string, std::uint32_t>> counts(n);
  std::vector<std::uint32_t> lengths(n, 0);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Passage& p = store.at(i);
    for (const auto& token : tokenize(p.title + " " + p.body)) {
      ++counts[i][token];
    }
    for (const auto& [term, tf] : counts[i]) {
      lengths[i] += tf;
    }
    total += lengths[i];
  }
  const double avg = static_cast<double>(total) / static_cast<double>(n);

  std::map<std::string, std::uint32_t> query_terms;
  for (const auto& token : tokenize(query)) {
    ++query_terms[token];
  }
  if (query_terms.empty()) {
    return {};
  }

  std::vector<double> scores(n, 0.0);
  const double k1 = params.k1;
  const double b = params.b;
  for (const auto& [term, qtf] : query_terms) {
    std::uint64_t df = 0;
    for (std::size_t i = 0; i < n; ++i) {
      df += counts[i].count(term) != 0 ? 1 : 0;
    }
    if (df == 0) {
      continue;
    }
    const double idf = std::log(1.0 + (static_cast<double>(n) - static_cast<double>(df) + 0.5) /
                                          (static_cast<double>(df) + 0.5));
    const double weight = static_cast<double>(qtf) * idf * (k1 + 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      auto it = counts[i].find(term);
      if (it == counts[i].end()) {
        continue;
      }
      const double tf = static_cast<double>(it->second);
      const double norm = k1 * (1.0 - b + b * static_cast<double>(lengths[i]) / avg);
      const double denom = tf + norm;
      const double saturation = tf / denom;
      const double contribution = weight * saturation;
      scores[i] += contribution;
    }
  }

  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; ++i) {
    if (scores[i] > 0.0) {
      order.push_back(i);
    }
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) {
    if (scores[a] != scores[c]) {
      return scores[a] > scores[c];
    }
    return store.at(a).passage_id < store.at(c).passage_id;
  });
  if (order.size() > static_cast<std::size_t>(k)) {
    order.resize(static_cast<std::size_t>(k));
  }
  std::vector<OracleHit> hits;
  hits.reserve(order.size());
  for (std::size_t i : order) {
    hits.push_back({store.at(i).passage_id, scores[i]});
  }
  return hits;
}

}  // namespace ragloop::oracle
