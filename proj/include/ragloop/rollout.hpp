#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ragloop/llm.hpp"
#include "ragloop/protocol.hpp"
#include "ragloop/retrieval.hpp"

namespace ragloop {

struct RolloutConfig {
  QueryMode mode;
  int k = 3;                         // passages per query
  int max_retrievals = 4;
  int max_new_tokens_per_round = 1024;
  double temperature = 0.7;
  std::optional<std::uint64_t> seed;
  int information_word_cap = 1000;   // per-query word cap at formatting time
};

enum class Termination {
  Answered,
  RetrievalCapReached,
  ScriptExhausted,
  ProtocolViolation,
  LengthExceeded,
  TransportError,
};

enum class SegmentOrigin { ModelGenerated, Injected };

struct RolloutTrace {
  std::string id;  // caller-assigned; defaults to the question
  std::string question;
  std::string prompt;
  std::string transcript;              // post-prompt bytes, model + injected
  std::vector<Segment> segments;       // parse of transcript (empty if unparseable)
  std::vector<SegmentOrigin> origins;  // parallel to segments
  int retrieval_count = 0;
  std::vector<std::string> warnings;
  Termination termination = Termination::ProtocolViolation;
  double wall_time_seconds = 0.0;
  std::optional<std::string> final_answer;  // present iff termination == Answered
  std::string error;                        // nonempty only for TransportError
  std::string model_output;                 // exact bytes the LLM emitted across turns
};

struct EpisodeMetrics {
  int retrieval_count = 0;
  double wall_time_seconds = 0.0;
  bool answered = false;
};

struct AggregateMetrics {
  std::size_t n = 0;
  double mean_retrieval_count = 0.0;
  double mean_wall_time_seconds = 0.0;
  double answered_fraction = 0.0;
};

EpisodeMetrics metrics_of(const RolloutTrace& trace);
AggregateMetrics aggregate_metrics(const std::vector<RolloutTrace>& traces);

// One interleaved generate/parse/retrieve/inject episode. Transport failures
// from either backend are captured in the trace (termination TransportError,
// message in error); protocol violations terminate the episode rather than
// throw.
RolloutTrace run_episode(const std::string& question, const RolloutConfig& cfg,
                         SearchBackend& retriever, LlmBackend& llm);

struct BatchRollout {
  std::vector<RolloutTrace> traces;  // input order
  AggregateMetrics aggregate;
};

// Episodes run concurrently (up to `parallelism`); each gets its own backend
// from the factory. Traces are identical to sequential execution under
// scripted backends.
BatchRollout run_batch(const std::vector<std::string>& questions, const RolloutConfig& cfg,
                       SearchBackend& retriever, LlmFactory& llms, int parallelism);

const char* termination_name(Termination t);
Termination termination_from_name(const std::string& name);

// One JSONL object per episode; the file contract consumed by the
// supervision and evaluation pipelines. include_timing=false zeroes the
// wall-time field so byte-identical traces can be compared across runs.
std::string trace_to_json(const RolloutTrace& trace, bool include_timing = true);
RolloutTrace trace_from_json(const std::string& line);

}  // namespace ragloop
