#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ragloop/qa.hpp"
#include "ragloop/rollout.hpp"

namespace ragloop {

// Binary exact-match reward over normalized answers.
struct Reward {
  int value = 0;  // 1 iff predicted normalizes to some gold variant
  std::optional<std::string> predicted;
  std::vector<std::string> gold;
};

// Character spans over the trace transcript that are EXCLUDED from any
// training loss: exactly the injected information segments, tags included.
// Offsets are transcript-relative (the prompt is not part of the span
// space); they convert losslessly to any tokenizer's token mask downstream.
struct LossMask {
  std::vector<std::pair<std::size_t, std::size_t>> masked_spans;  // sorted, non-overlapping
};

enum class SftCategory { DirectAnswer, InitialSearch, ContinuedSearch, InformedAnswer };

struct SftSample {
  std::string input;   // prompt (+ transcript through the latest information close tag)
  std::string target;  // model text through the next </search> or </answer>
  SftCategory category = SftCategory::DirectAnswer;
  std::string source_trace_id;
};

struct SegmentationError : std::runtime_error {
  SegmentationError(const std::string& message, std::size_t begin, std::size_t end)
      : std::runtime_error(message + " (span [" + std::to_string(begin) + ", " +
                           std::to_string(end) + "))"),
        span_begin(begin),
        span_end(end) {}
  std::size_t span_begin;
  std::size_t span_end;
};

// Lowercase, strip punctuation, drop the articles a/an/the, collapse
// whitespace — the standard open-domain QA EM normalization. Idempotent.
std::string normalize_answer(const std::string& s);

// 1 iff the normalized prediction equals any normalized gold variant; an
// absent prediction scores 0.
Reward exact_match(const std::optional<std::string>& predicted,
                   const std::vector<std::string>& gold);

LossMask compute_loss_mask(const RolloutTrace& trace);

// Splits an answered trace at every information boundary: n information
// segments yield n+1 samples whose targets never contain injected text.
// Category by position and final tag: first sample answering directly ->
// DirectAnswer, first sample searching -> InitialSearch, later searches ->
// ContinuedSearch, the informed final answer -> InformedAnswer.
std::vector<SftSample> segment_sft(const RolloutTrace& trace);

const char* sft_category_name(SftCategory c);
std::string sft_sample_to_json(const SftSample& sample);

struct SelectionConfig {
  int rollouts = 10;
  double temperature = 1.2;
  int max_retrievals = 10;
  int k = 3;
  QueryMode mode;
  int max_new_tokens_per_round = 1024;
  int information_word_cap = 1000;
  std::uint64_t seed = 0;
  int parallelism = 1;
};

struct SelectionReport {
  std::string question_id;
  int rollouts_attempted = 0;
  int successes = 0;
  int errors = 0;  // teacher failures, counted as unsuccessful rollouts
  bool kept = false;
};

// Filters failed questions down to the answerable ones: up to cfg.rollouts
// high-temperature episodes per question, stopping at the first exact-match
// success. Deterministic given a scripted teacher and seed; reports are in
// input order.
std::pair<std::vector<QaExample>, std::vector<SelectionReport>> select_rl_data(
    const std::vector<QaExample>& failed_questions, LlmFactory& teacher,
    SearchBackend& retriever, const SelectionConfig& cfg = {});

std::string selection_report_to_json(const SelectionReport& report);

namespace detail {
// Fisher-Yates with a fully specified RNG so results are identical across
// platforms (std::shuffle and std::sample are implementation-defined).
std::vector<std::size_t> deterministic_permutation(std::size_t n, std::uint64_t seed);
}  // namespace detail

// All hard samples plus floor(correct_fraction * |correct|) seeded-uniform
// picks from correct, shuffled with the same seed.
template <typename T>
std::vector<T> mix_datasets(const std::vector<T>& hard, const std::vector<T>& correct,
                            double correct_fraction, std::uint64_t seed) {
  if (correct_fraction < 0.0 || correct_fraction > 1.0) {
    throw std::invalid_argument("correct_fraction must be in [0, 1]");
  }
  const std::size_t take =
      static_cast<std::size_t>(correct_fraction * static_cast<double>(correct.size()));
  const auto pick = detail::deterministic_permutation(correct.size(), seed);
  std::vector<T> mixed = hard;
  mixed.reserve(hard.size() + take);
  for (std::size_t i = 0; i < take; ++i) {
    mixed.push_back(correct[pick[i]]);
  }
  const auto order = detail::deterministic_permutation(mixed.size(), seed + 1);
  std::vector<T> shuffled;
  shuffled.reserve(mixed.size());
  for (std::size_t i = 0; i < mixed.size(); ++i) {
    shuffled.push_back(std::move(mixed[order[i]]));
  }
  return shuffled;
}

}  // namespace ragloop
