#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ragloop/qa.hpp"
#include "ragloop/rollout.hpp"
#include "ragloop/supervision.hpp"

namespace ragloop {

struct PerExampleResult {
  std::string id;
  int em = 0;
  int retrieval_count = 0;
  double time_seconds = 0.0;
  Termination termination = Termination::ProtocolViolation;
  std::optional<std::string> final_answer;
};

struct EvalReport {
  std::string dataset_name;
  std::size_t n = 0;
  double em = 0.0;
  double avg_time_seconds = 0.0;
  double avg_retrieval_count = 0.0;
  std::map<std::string, int> termination_histogram;
  std::vector<PerExampleResult> per_example;  // input order
};

struct EvalOptions {
  int parallelism = 1;
  // false zeroes every time field at collection so repeated scripted runs
  // serialize byte-identically.
  bool include_timing = true;
};

// One episode per example, EM per Eq-style match-any over gold variants;
// aggregates are arithmetic means over per_example rows. Per-example
// failures score 0 with their termination recorded; the batch never aborts.
EvalReport evaluate(const std::vector<QaExample>& dataset, const RolloutConfig& cfg,
                    SearchBackend& retriever, LlmFactory& llms, const EvalOptions& options = {},
                    const std::string& dataset_name = "");

// Recomputes aggregates from per_example rows (test hook: reports must be a
// pure function of their rows).
void recompute_aggregates(EvalReport& report);

struct PairedRow {
  std::string id;
  int em_single = 0;
  int em_multi = 0;
  int retrieval_single = 0;
  int retrieval_multi = 0;
  double time_single = 0.0;
  double time_multi = 0.0;
};

struct ModeComparison {
  EvalReport single_mode;
  EvalReport multi_mode;
  std::vector<PairedRow> rows;
  double delta_em = 0.0;               // multi - single
  double delta_retrieval_count = 0.0;
  double delta_time_seconds = 0.0;
};

ModeComparison compare_modes(const std::vector<QaExample>& dataset,
                             const RolloutConfig& cfg_single, const RolloutConfig& cfg_multi,
                             SearchBackend& retriever, LlmFactory& llm_single,
                             LlmFactory& llm_multi, const EvalOptions& options = {},
                             const std::string& dataset_name = "");

std::string report_to_json(const EvalReport& report);
std::string comparison_to_json(const ModeComparison& comparison);
std::string report_to_csv(const EvalReport& report);

}  // namespace ragloop
