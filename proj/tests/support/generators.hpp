#pragma once

// Seeded generators for property tests: random well-formed transcripts for
// the grammar round-trip, random corpora for the retrieval oracle, and
// random scripted episodes for the supervision duality checks.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ragloop/corpus.hpp"
#include "ragloop/llm.hpp"
#include "ragloop/protocol.hpp"
#include "ragloop/retrieval.hpp"
#include "ragloop/rollout.hpp"

namespace ragloop::gen {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::size_t below(std::size_t n) {
    return n == 0 ? 0 : std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }

  bool chance(double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_) < p; }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

// Text safe for segment interiors: no '<', so it can never open a tag.
inline std::string safe_text(Rng& rng, std::size_t max_len = 40) {
  static const std::string alphabet =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789 .,:;'\"!?()-&/ \n";
  const std::size_t len = rng.below(max_len + 1);
  std::string out;
  out.reserve(len);
  for (std::size_t i = 0; i < len; ++i) {
    out.push_back(alphabet[rng.below(alphabet.size())]);
  }
  return out;
}

inline std::string word(Rng& rng, std::size_t vocab) {
  return "w" + std::to_string(rng.below(vocab));
}

// A random well-formed transcript: tagged segments with optional plain text
// between them, occasionally ending in an unterminated tag.
inline std::string random_transcript(Rng& rng) {
  static const SegmentKind kinds[] = {SegmentKind::Think, SegmentKind::Search,
                                      SegmentKind::Information, SegmentKind::Answer};
  std::string out;
  const std::size_t segments = rng.below(8) + 1;
  for (std::size_t i = 0; i < segments; ++i) {
    if (rng.chance(0.4)) {
      out += safe_text(rng);
    }
    const SegmentKind kind = kinds[rng.below(4)];
    out += tag_open(kind);
    out += safe_text(rng);
    if (i + 1 == segments && rng.chance(0.15)) {
      return out;  // unterminated final tag
    }
    out += tag_close(kind);
  }
  if (rng.chance(0.4)) {
    out += safe_text(rng);
  }
  return out;
}

// Seeded synthetic corpus with a zipf-ish vocabulary.
inline PassageStore random_store(Rng& rng, std::size_t num_docs, std::size_t vocab,
                                 int passage_words = 100) {
  std::vector<RawDocument> docs;
  docs.reserve(num_docs);
  for (std::size_t d = 0; d < num_docs; ++d) {
    RawDocument doc;
    doc.doc_id = "doc" + std::to_string(d);
    doc.title = word(rng, vocab) + " " + word(rng, vocab);
    const std::size_t words = rng.below(220) + 5;
    for (std::size_t w = 0; w < words; ++w) {
      if (w > 0) {
        doc.text += ' ';
      }
      // Skew toward low ids so term frequencies vary.
      const std::size_t id = rng.chance(0.5) ? rng.below(vocab / 10 + 1) : rng.below(vocab);
      doc.text += "w" + std::to_string(id);
    }
    docs.push_back(std::move(doc));
  }
  return ingest(docs, passage_words);
}

inline std::string random_query(Rng& rng, std::size_t vocab) {
  const std::size_t terms = rng.below(5) + 1;
  std::string q;
  for (std::size_t t = 0; t < terms; ++t) {
    if (t > 0) {
      q += ' ';
    }
    q += word(rng, vocab);
  }
  return q;
}

// Deterministic stub backend for episode generators: fabricates docs from
// the query text.
class StubBackend : public SearchBackend {
 public:
  explicit StubBackend(int docs_per_query = 2) : docs_per_query_(docs_per_query) {}

  std::vector<std::vector<RetrievedDoc>> retrieve(const std::vector<std::string>& queries,
                                                  int k) override {
    std::vector<std::vector<RetrievedDoc>> results(queries.size());
    for (std::size_t i = 0; i < queries.size(); ++i) {
      const int docs = std::min(docs_per_query_, k);
      for (int d = 0; d < docs; ++d) {
        RetrievedDoc doc;
        doc.passage_id = "stub:" + std::to_string(d);
        doc.title = "Stub " + std::to_string(d);
        doc.body = "result " + std::to_string(d) + " for " + queries[i];
        doc.score = 1.0 / (d + 1);
        results[i].push_back(std::move(doc));
      }
    }
    return results;
  }

 private:
  int docs_per_query_;
};

// Random scripted turns for an answered episode with `rounds` retrievals.
inline std::vector<std::string> random_answered_turns(Rng& rng, int rounds, bool multi_mode) {
  std::vector<std::string> turns;
  for (int r = 0; r < rounds; ++r) {
    std::string search_text = " " + word(rng, 50);
    if (multi_mode) {
      const std::size_t extra = rng.below(3);
      for (std::size_t q = 0; q < extra; ++q) {
        search_text += ", " + word(rng, 50) + " " + word(rng, 50);
      }
    }
    std::string turn;
    if (r > 0 || rng.chance(0.5)) {
      turn += "\n";
    }
    turn += "<think> " + safe_text(rng, 30) + " </think>\n<search>" + search_text + " </search>";
    turns.push_back(std::move(turn));
  }
  std::string final_turn;
  if (rounds > 0 || rng.chance(0.5)) {
    final_turn += "\n";
  }
  final_turn +=
      "<think> " + safe_text(rng, 30) + " </think>\n<answer> answer " +
      std::to_string(rng.below(1000)) + " </answer>";
  turns.push_back(std::move(final_turn));
  return turns;
}

// Drives the real episode loop with a random script; returns an answered
// engine-built trace with `rounds` information blocks.
inline RolloutTrace random_answered_trace(Rng& rng, int rounds, bool multi_mode) {
  ScriptedModel model(random_answered_turns(rng, rounds, multi_mode));
  StubBackend backend;
  RolloutConfig cfg;
  cfg.mode = multi_mode ? QueryMode::multi() : QueryMode::single();
  cfg.max_retrievals = rounds + 1;
  cfg.k = 3;
  return run_episode("generated question " + std::to_string(rng.below(100000)), cfg, backend,
                     model);
}

}  // namespace ragloop::gen
