#include "ragloop/rollout.hpp"

#include <chrono>
#include <utility>

#include <json.hpp>

#include "ragloop/hash.hpp"
#include "ragloop/parallel.hpp"

namespace ragloop {

EpisodeMetrics metrics_of(const RolloutTrace& trace) {
  return {trace.retrieval_count, trace.wall_time_seconds,
          trace.termination == Termination::Answered};
}

AggregateMetrics aggregate_metrics(const std::vector<RolloutTrace>& traces) {
  AggregateMetrics agg;
  agg.n = traces.size();
  if (traces.empty()) {
    return agg;
  }
  double retrievals = 0.0;
  double wall = 0.0;
  double answered = 0.0;
  for (const auto& t : traces) {
    retrievals += t.retrieval_count;
    wall += t.wall_time_seconds;
    answered += t.termination == Termination::Answered ? 1.0 : 0.0;
  }
  const double n = static_cast<double>(traces.size());
  agg.mean_retrieval_count = retrievals / n;
  agg.mean_wall_time_seconds = wall / n;
  agg.answered_fraction = answered / n;
  return agg;
}

namespace {

const std::string kSearchStop = "</search>";
const std::string kAnswerStop = "</answer>";

struct InjectedSpan {
  std::size_t begin;
  std::size_t end;
};

void assign_origins(RolloutTrace& trace, const std::vector<InjectedSpan>& injected) {
  trace.origins.assign(trace.segments.size(), SegmentOrigin::ModelGenerated);
  for (std::size_t i = 0; i < trace.segments.size(); ++i) {
    const auto& seg = trace.segments[i];
    for (const auto& span : injected) {
      if (seg.begin >= span.begin && seg.end <= span.end) {
        trace.origins[i] = SegmentOrigin::Injected;
        break;
      }
    }
  }
}

void finish_trace(RolloutTrace& trace, const std::vector<InjectedSpan>& injected) {
  try {
    trace.segments = parse_transcript(trace.transcript);
  } catch (const TranscriptParseError&) {
    trace.segments.clear();
  }
  assign_origins(trace, injected);
}

}  // namespace

RolloutTrace run_episode(const std::string& question, const RolloutConfig& cfg,
                         SearchBackend& retriever, LlmBackend& llm) {
  const auto started = std::chrono::steady_clock::now();
  RolloutTrace trace;
  trace.id = question;
  trace.question = question;
  trace.prompt = build_prompt(question, cfg.mode);

  std::vector<InjectedSpan> injected;
  auto finish = [&](Termination termination) {
    trace.termination = termination;
    finish_trace(trace, injected);
    trace.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return trace;
  };

  while (true) {
    GenerationRequest request;
    request.context = trace.prompt + trace.transcript;
    request.prompt_chars = trace.prompt.size();
    request.stop_sequences = {kSearchStop, kAnswerStop};
    request.max_new_tokens = cfg.max_new_tokens_per_round;
    request.temperature = cfg.temperature;
    request.seed = cfg.seed;

    GenerationResult generated;
    try {
      generated = llm.generate(request);
    } catch (const ScriptExhaustedError& e) {
      trace.warnings.push_back(e.what());
      return finish(Termination::ScriptExhausted);
    } catch (const LlmTransportError& e) {
      trace.error = e.what();
      return finish(Termination::TransportError);
    } catch (const LlmProtocolError& e) {
      trace.error = e.what();
      return finish(Termination::TransportError);
    }

    trace.model_output += generated.text;
    trace.transcript += generated.text;

    if (generated.stop_reason == StopReason::Length) {
      return finish(Termination::LengthExceeded);
    }
    if (generated.stop_reason == StopReason::EndOfMessage) {
      trace.warnings.push_back("model ended its message without a closed search or answer tag");
      return finish(Termination::ProtocolViolation);
    }

    std::vector<Segment> segments;
    try {
      segments = parse_transcript(trace.transcript);
    } catch (const TranscriptParseError& e) {
      trace.warnings.push_back(e.what());
      return finish(Termination::ProtocolViolation);
    }
    if (segments.empty()) {
      trace.warnings.push_back("generation produced no parseable segments");
      return finish(Termination::ProtocolViolation);
    }
    const Segment& last = segments.back();

    if (generated.matched_stop == kAnswerStop) {
      if (last.kind != SegmentKind::Answer || !last.complete) {
        trace.warnings.push_back("answer stop without a closed answer segment");
        return finish(Termination::ProtocolViolation);
      }
      trace.final_answer = extract_answer(segments);
      return finish(Termination::Answered);
    }

    // Search close tag arrived via the stop sequence.
    if (last.kind != SegmentKind::Search || !last.complete) {
      trace.warnings.push_back("search stop without a closed search segment");
      return finish(Termination::ProtocolViolation);
    }
    ExtractedQueries extracted = extract_queries(last.text, cfg.mode);
    if (extracted.truncation_warning) {
      trace.warnings.push_back(*extracted.truncation_warning);
    }
    if (extracted.queries.empty()) {
      trace.warnings.push_back("search segment contained no queries");
      return finish(Termination::ProtocolViolation);
    }
    if (trace.retrieval_count + 1 > cfg.max_retrievals) {
      return finish(Termination::RetrievalCapReached);
    }

    std::vector<std::vector<RetrievedDoc>> results;
    try {
      results = retriever.retrieve(extracted.queries, cfg.k);
    } catch (const std::exception& e) {
      trace.error = e.what();
      return finish(Termination::TransportError);
    }
    const InformationBlock block = make_information_block(extracted.queries, results);
    const std::string info = format_information(block, cfg.mode, cfg.information_word_cap);
    injected.push_back({trace.transcript.size(), trace.transcript.size() + info.size()});
    trace.transcript += info;
    ++trace.retrieval_count;
  }
}

BatchRollout run_batch(const std::vector<std::string>& questions, const RolloutConfig& cfg,
                       SearchBackend& retriever, LlmFactory& llms, int parallelism) {
  BatchRollout batch;
  batch.traces.resize(questions.size());
  parallel_for(questions.size(), parallelism, [&](std::size_t i) {
    RolloutConfig episode_cfg = cfg;
    if (cfg.seed) {
      episode_cfg.seed = derive_seed(*cfg.seed, questions[i], i);
    }
    auto backend = llms.make(questions[i]);
    batch.traces[i] = run_episode(questions[i], episode_cfg, retriever, *backend);
  });
  batch.aggregate = aggregate_metrics(batch.traces);
  return batch;
}

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::Answered: return "answered";
    case Termination::RetrievalCapReached: return "retrieval_cap_reached";
    case Termination::ScriptExhausted: return "script_exhausted";
    case Termination::ProtocolViolation: return "protocol_violation";
    case Termination::LengthExceeded: return "length_exceeded";
    case Termination::TransportError: return "transport_error";
  }
  return "protocol_violation";
}

Termination termination_from_name(const std::string& name) {
  for (Termination t : {Termination::Answered, Termination::RetrievalCapReached,
                        Termination::ScriptExhausted, Termination::ProtocolViolation,
                        Termination::LengthExceeded, Termination::TransportError}) {
    if (name == termination_name(t)) {
      return t;
    }
  }
  throw std::invalid_argument("unknown termination: " + name);
}

namespace {

SegmentKind kind_from_name(const std::string& name) {
  for (SegmentKind k : {SegmentKind::Think, SegmentKind::Search, SegmentKind::Information,
                        SegmentKind::Answer, SegmentKind::Plain}) {
    if (name == segment_kind_name(k)) {
      return k;
    }
  }
  throw std::invalid_argument("unknown segment kind: " + name);
}

}  // namespace

std::string trace_to_json(const RolloutTrace& trace, bool include_timing) {
  nlohmann::ordered_json obj;
  obj["id"] = trace.id;
  obj["question"] = trace.question;
  obj["prompt"] = trace.prompt;
  obj["transcript"] = trace.transcript;
  auto& segments = obj["segments"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < trace.segments.size(); ++i) {
    const auto& seg = trace.segments[i];
    nlohmann::ordered_json s;
    s["kind"] = segment_kind_name(seg.kind);
    s["text"] = seg.text;
    s["begin"] = seg.begin;
    s["end"] = seg.end;
    s["complete"] = seg.complete;
    s["origin"] =
        trace.origins[i] == SegmentOrigin::Injected ? "injected" : "model";
    segments.push_back(std::move(s));
  }
  obj["retrieval_count"] = trace.retrieval_count;
  obj["warnings"] = trace.warnings;
  obj["termination"] = termination_name(trace.termination);
  obj["wall_time_s"] = include_timing ? trace.wall_time_seconds : 0.0;
  if (trace.final_answer) {
    obj["final_answer"] = *trace.final_answer;
  } else {
    obj["final_answer"] = nullptr;
  }
  if (!trace.error.empty()) {
    obj["error"] = trace.error;
  }
  return obj.dump();
}

RolloutTrace trace_from_json(const std::string& line) {
  nlohmann::json obj = nlohmann::json::parse(line);
  RolloutTrace trace;
  trace.id = obj.value("id", "");
  trace.question = obj.value("question", "");
  trace.prompt = obj.value("prompt", "");
  trace.transcript = obj.value("transcript", "");
  for (const auto& s : obj.value("segments", nlohmann::json::array())) {
    Segment seg;
    seg.kind = kind_from_name(s.value("kind", "plain"));
    seg.text = s.value("text", "");
    seg.begin = s.value("begin", std::size_t{0});
    seg.end = s.value("end", std::size_t{0});
    seg.complete = s.value("complete", true);
    trace.segments.push_back(std::move(seg));
    trace.origins.push_back(s.value("origin", "model") == "injected"
                                ? SegmentOrigin::Injected
                                : SegmentOrigin::ModelGenerated);
  }
  trace.retrieval_count = obj.value("retrieval_count", 0);
  trace.warnings = obj.value("warnings", std::vector<std::string>{});
  trace.termination = termination_from_name(obj.value("termination", "protocol_violation"));
  trace.wall_time_seconds = obj.value("wall_time_s", 0.0);
  if (obj.contains("final_answer") && !obj["final_answer"].is_null()) {
    trace.final_answer = obj["final_answer"].get<std::string>();
  }
  trace.error = obj.value("error", "");
  for (std::size_t i = 0; i < trace.segments.size(); ++i) {
    if (trace.origins[i] == SegmentOrigin::ModelGenerated) {
      trace.model_output += trace.segments[i].kind == SegmentKind::Plain
                                ? trace.segments[i].text
                                : trace.transcript.substr(trace.segments[i].begin,
                                                          trace.segments[i].end -
                                                              trace.segments[i].begin);
    }
  }
  return trace;
}

}  // namespace ragloop
