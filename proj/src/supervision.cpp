#include "ragloop/supervision.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include <json.hpp>

#include "ragloop/hash.hpp"
#include "ragloop/parallel.hpp"

namespace ragloop {

std::string normalize_answer(const std::string& s) {
  std::string depunctuated;
  depunctuated.reserve(s.size());
  for (char ch : s) {
    const unsigned char c = static_cast<unsigned char>(ch);
    if (c < 0x80 && std::ispunct(c)) {
      continue;
    }
    depunctuated.push_back(
        c < 0x80 ? static_cast<char>(std::tolower(c)) : ch);
  }
  std::string out;
  for (const auto& word : split_words(depunctuated)) {
    if (word == "a" || word == "an" || word == "the") {
      continue;
    }
    if (!out.empty()) {
      out += ' ';
    }
    out += word;
  }
  return out;
}

Reward exact_match(const std::optional<std::string>& predicted,
                   const std::vector<std::string>& gold) {
  if (gold.empty()) {
    throw std::invalid_argument("exact_match requires at least one gold answer");
  }
  Reward reward;
  reward.predicted = predicted;
  reward.gold = gold;
  if (!predicted) {
    return reward;
  }
  const std::string normalized = normalize_answer(*predicted);
  for (const auto& g : gold) {
    if (normalize_answer(g) == normalized) {
      reward.value = 1;
      break;
    }
  }
  return reward;
}

LossMask compute_loss_mask(const RolloutTrace& trace) {
  LossMask mask;
  std::size_t prev_end = 0;
  bool first = true;
  for (const auto& seg : trace.segments) {
    if (!first && seg.begin < prev_end) {
      throw SegmentationError("overlapping segment spans", seg.begin, seg.end);
    }
    prev_end = seg.end;
    first = false;
    if (seg.kind == SegmentKind::Information) {
      mask.masked_spans.emplace_back(seg.begin, seg.end);
    }
  }
  return mask;
}

namespace {

bool whitespace_only(const std::string& text) {
  return std::all_of(text.begin(), text.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

std::vector<SftSample> segment_sft(const RolloutTrace& trace) {
  if (trace.termination != Termination::Answered) {
    throw std::invalid_argument("segment_sft requires an answered trace");
  }
  const auto& segments = trace.segments;
  for (const auto& seg : segments) {
    if (!seg.complete) {
      throw SegmentationError("incomplete segment in an answered trace", seg.begin, seg.end);
    }
  }

  // Collect chunk boundaries: each information segment closes a chunk that
  // must end with the search that triggered it; the final chunk ends with
  // the answer.
  std::vector<SftSample> samples;
  std::size_t chunk_start = 0;
  const Segment* pending_search = nullptr;  // closed search awaiting its information block
  bool answered = false;

  auto make_sample = [&](std::size_t end, bool ends_in_search) {
    SftSample sample;
    sample.input = trace.prompt + trace.transcript.substr(0, chunk_start);
    sample.target = trace.transcript.substr(chunk_start, end - chunk_start);
    const bool initial = samples.empty();
    sample.category = ends_in_search
                          ? (initial ? SftCategory::InitialSearch : SftCategory::ContinuedSearch)
                          : (initial ? SftCategory::DirectAnswer : SftCategory::InformedAnswer);
    sample.source_trace_id = trace.id;
    samples.push_back(std::move(sample));
  };

  for (const auto& seg : segments) {
    if (answered) {
      throw SegmentationError("content after the final answer", seg.begin, seg.end);
    }
    switch (seg.kind) {
      case SegmentKind::Think:
        if (pending_search != nullptr) {
          throw SegmentationError("reasoning between a search and its information block",
                                  seg.begin, seg.end);
        }
        break;
      case SegmentKind::Plain:
        // Inter-tag whitespace is tolerated, including between a search and
        // its information block.
        if (pending_search != nullptr && !whitespace_only(seg.text)) {
          throw SegmentationError("text between a search and its information block", seg.begin,
                                  seg.end);
        }
        break;
      case SegmentKind::Search:
        if (pending_search != nullptr) {
          throw SegmentationError("search issued before the previous one was answered",
                                  seg.begin, seg.end);
        }
        pending_search = &seg;
        break;
      case SegmentKind::Information:
        if (pending_search == nullptr) {
          throw SegmentationError("information block without a preceding search", seg.begin,
                                  seg.end);
        }
        make_sample(pending_search->end, /*ends_in_search=*/true);
        chunk_start = seg.end;
        pending_search = nullptr;
        break;
      case SegmentKind::Answer:
        if (pending_search != nullptr) {
          throw SegmentationError("answer emitted before a pending search was answered",
                                  seg.begin, seg.end);
        }
        make_sample(seg.end, /*ends_in_search=*/false);
        answered = true;
        break;
    }
  }
  if (!answered) {
    throw SegmentationError("answered trace without an answer segment", 0, trace.transcript.size());
  }
  if (!samples.empty()) {
    // The final chunk must close the transcript; trailing bytes after the
    // answer are a structural defect.
    const std::size_t covered = chunk_start + samples.back().target.size();
    if (covered != trace.transcript.size()) {
      throw SegmentationError("content after the final answer", covered,
                              trace.transcript.size());
    }
  }
  return samples;
}

const char* sft_category_name(SftCategory c) {
  switch (c) {
    case SftCategory::DirectAnswer: return "direct_answer";
    case SftCategory::InitialSearch: return "initial_search";
    case SftCategory::ContinuedSearch: return "continued_search";
    case SftCategory::InformedAnswer: return "informed_answer";
  }
  return "direct_answer";
}

std::string sft_sample_to_json(const SftSample& sample) {
  nlohmann::ordered_json obj;
  obj["input"] = sample.input;
  obj["target"] = sample.target;
  obj["category"] = sft_category_name(sample.category);
  obj["source_trace_id"] = sample.source_trace_id;
  return obj.dump();
}

std::pair<std::vector<QaExample>, std::vector<SelectionReport>> select_rl_data(
    const std::vector<QaExample>& failed_questions, LlmFactory& teacher,
    SearchBackend& retriever, const SelectionConfig& cfg) {
  std::vector<SelectionReport> reports(failed_questions.size());
  std::vector<char> kept(failed_questions.size(), 0);

  parallel_for(failed_questions.size(), cfg.parallelism, [&](std::size_t i) {
    const QaExample& example = failed_questions[i];
    SelectionReport report;
    report.question_id = example.id;
    for (int attempt = 0; attempt < cfg.rollouts; ++attempt) {
      RolloutConfig rollout_cfg;
      rollout_cfg.mode = cfg.mode;
      rollout_cfg.k = cfg.k;
      rollout_cfg.max_retrievals = cfg.max_retrievals;
      rollout_cfg.max_new_tokens_per_round = cfg.max_new_tokens_per_round;
      rollout_cfg.information_word_cap = cfg.information_word_cap;
      rollout_cfg.temperature = cfg.temperature;
      rollout_cfg.seed = derive_seed(cfg.seed, example.id, static_cast<std::uint64_t>(attempt));

      auto backend = teacher.make(example.question);
      RolloutTrace trace = run_episode(example.question, rollout_cfg, retriever, *backend);
      ++report.rollouts_attempted;
      if (trace.termination == Termination::TransportError ||
          trace.termination == Termination::ScriptExhausted) {
        ++report.errors;
      }
      if (exact_match(trace.final_answer, example.golden_answers).value == 1) {
        ++report.successes;
        break;  // first correct solution keeps the question
      }
    }
    report.kept = report.successes >= 1;
    kept[i] = report.kept ? 1 : 0;
    reports[i] = std::move(report);
  });

  std::vector<QaExample> kept_questions;
  for (std::size_t i = 0; i < failed_questions.size(); ++i) {
    if (kept[i] != 0) {
      kept_questions.push_back(failed_questions[i]);
    }
  }
  return {std::move(kept_questions), std::move(reports)};
}

std::string selection_report_to_json(const SelectionReport& report) {
  nlohmann::ordered_json obj;
  obj["question_id"] = report.question_id;
  obj["rollouts_attempted"] = report.rollouts_attempted;
  obj["successes"] = report.successes;
  obj["errors"] = report.errors;
  obj["kept"] = report.kept;
  return obj.dump();
}

namespace detail {

namespace {
// SplitMix64: tiny and fully specified, unlike std::shuffle.
struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
};
}  // namespace

std::vector<std::size_t> deterministic_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  SplitMix64 rng{seed};
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.next() % i);
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

}  // namespace detail

}  // namespace ragloop
