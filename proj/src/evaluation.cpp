#include "ragloop/evaluation.hpp"

#include <sstream>

#include <json.hpp>

namespace ragloop {

EvalReport evaluate(const std::vector<QaExample>& dataset, const RolloutConfig& cfg,
                    SearchBackend& retriever, LlmFactory& llms, const EvalOptions& options,
                    const std::string& dataset_name) {
  if (dataset.empty()) {
    throw std::invalid_argument("evaluate requires a nonempty dataset");
  }
  std::vector<std::string> questions;
  questions.reserve(dataset.size());
  for (const auto& ex : dataset) {
    questions.push_back(ex.question);
  }
  BatchRollout batch = run_batch(questions, cfg, retriever, llms, options.parallelism);

  EvalReport report;
  report.dataset_name = dataset_name;
  report.n = dataset.size();
  report.per_example.reserve(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const RolloutTrace& trace = batch.traces[i];
    PerExampleResult row;
    row.id = dataset[i].id;
    row.em = exact_match(trace.final_answer, dataset[i].golden_answers).value;
    row.retrieval_count = trace.retrieval_count;
    row.time_seconds = options.include_timing ? trace.wall_time_seconds : 0.0;
    row.termination = trace.termination;
    row.final_answer = trace.final_answer;
    report.per_example.push_back(std::move(row));
  }
  recompute_aggregates(report);
  return report;
}

void recompute_aggregates(EvalReport& report) {
  report.n = report.per_example.size();
  report.termination_histogram.clear();
  double em = 0.0;
  double time = 0.0;
  double retrievals = 0.0;
  for (const auto& row : report.per_example) {
    em += row.em;
    time += row.time_seconds;
    retrievals += row.retrieval_count;
    ++report.termination_histogram[termination_name(row.termination)];
  }
  const double n = report.per_example.empty() ? 1.0 : static_cast<double>(report.n);
  report.em = em / n;
  report.avg_time_seconds = time / n;
  report.avg_retrieval_count = retrievals / n;
}

ModeComparison compare_modes(const std::vector<QaExample>& dataset,
                             const RolloutConfig& cfg_single, const RolloutConfig& cfg_multi,
                             SearchBackend& retriever, LlmFactory& llm_single,
                             LlmFactory& llm_multi, const EvalOptions& options,
                             const std::string& dataset_name) {
  ModeComparison cmp;
  cmp.single_mode = evaluate(dataset, cfg_single, retriever, llm_single, options, dataset_name);
  cmp.multi_mode = evaluate(dataset, cfg_multi, retriever, llm_multi, options, dataset_name);
  cmp.rows.reserve(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const auto& s = cmp.single_mode.per_example[i];
    const auto& m = cmp.multi_mode.per_example[i];
    PairedRow row;
    row.id = s.id;
    row.em_single = s.em;
    row.em_multi = m.em;
    row.retrieval_single = s.retrieval_count;
    row.retrieval_multi = m.retrieval_count;
    row.time_single = s.time_seconds;
    row.time_multi = m.time_seconds;
    cmp.rows.push_back(row);
  }
  cmp.delta_em = cmp.multi_mode.em - cmp.single_mode.em;
  cmp.delta_retrieval_count =
      cmp.multi_mode.avg_retrieval_count - cmp.single_mode.avg_retrieval_count;
  cmp.delta_time_seconds = cmp.multi_mode.avg_time_seconds - cmp.single_mode.avg_time_seconds;
  return cmp;
}

namespace {

nlohmann::ordered_json report_json(const EvalReport& report) {
  nlohmann::ordered_json obj;
  obj["dataset"] = report.dataset_name;
  obj["n"] = report.n;
  obj["em"] = report.em;
  obj["avg_time_s"] = report.avg_time_seconds;
  obj["avg_retrieval_count"] = report.avg_retrieval_count;
  obj["termination_histogram"] = report.termination_histogram;
  auto& rows = obj["per_example"] = nlohmann::ordered_json::array();
  for (const auto& row : report.per_example) {
    nlohmann::ordered_json r;
    r["id"] = row.id;
    r["em"] = row.em;
    r["retrieval_count"] = row.retrieval_count;
    r["time_s"] = row.time_seconds;
    r["termination"] = termination_name(row.termination);
    if (row.final_answer) {
      r["final_answer"] = *row.final_answer;
    } else {
      r["final_answer"] = nullptr;
    }
    rows.push_back(std::move(r));
  }
  return obj;
}

}  // namespace

std::string report_to_json(const EvalReport& report) { return report_json(report).dump(2); }

std::string comparison_to_json(const ModeComparison& comparison) {
  nlohmann::ordered_json obj;
  obj["single"] = report_json(comparison.single_mode);
  obj["multi"] = report_json(comparison.multi_mode);
  nlohmann::ordered_json delta;
  delta["em"] = comparison.delta_em;
  delta["retrieval_count"] = comparison.delta_retrieval_count;
  delta["time_s"] = comparison.delta_time_seconds;
  obj["delta"] = std::move(delta);
  auto& rows = obj["per_example"] = nlohmann::ordered_json::array();
  for (const auto& row : comparison.rows) {
    nlohmann::ordered_json r;
    r["id"] = row.id;
    r["em_single"] = row.em_single;
    r["em_multi"] = row.em_multi;
    r["delta_em"] = row.em_multi - row.em_single;
    r["retrieval_single"] = row.retrieval_single;
    r["retrieval_multi"] = row.retrieval_multi;
    r["delta_retrieval"] = row.retrieval_multi - row.retrieval_single;
    r["time_single_s"] = row.time_single;
    r["time_multi_s"] = row.time_multi;
    rows.push_back(std::move(r));
  }
  return obj.dump(2);
}

namespace {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) {
    return field;
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string report_to_csv(const EvalReport& report) {
  std::ostringstream out;
  out << "id,em,retrieval_count,time_s,termination,final_answer\n";
  for (const auto& row : report.per_example) {
    out << csv_escape(row.id) << ',' << row.em << ',' << row.retrieval_count << ','
        << row.time_seconds << ',' << termination_name(row.termination) << ','
        << csv_escape(row.final_answer.value_or("")) << '\n';
  }
  return out.str();
}

}  // namespace ragloop
