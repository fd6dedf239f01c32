#include "ragloop/llm.hpp"

#include <utility>

#include "ragloop/corpus.hpp"

namespace ragloop {

ScriptedModel::ScriptedModel(std::vector<std::string> turns) : turns_(std::move(turns)) {}

GenerationResult ScriptedModel::generate(const GenerationRequest& request) {
  if (request.max_new_tokens < 1) {
    throw std::invalid_argument("max_new_tokens must be >= 1");
  }
  if (cursor_ >= turns_.size()) {
    throw ScriptExhaustedError("script exhausted after " + std::to_string(turns_.size()) +
                               " turns");
  }
  const std::string& turn = turns_[cursor_++];

  std::size_t earliest = std::string::npos;
  const std::string* matched = nullptr;
  for (const auto& stop : request.stop_sequences) {
    if (stop.empty()) {
      continue;
    }
    const std::size_t at = turn.find(stop);
    if (at != std::string::npos && (at < earliest || (at == earliest && matched == nullptr))) {
      earliest = at;
      matched = &stop;
    }
  }

  GenerationResult result;
  if (matched != nullptr) {
    result.text = turn.substr(0, earliest + matched->size());
    result.stop_reason = StopReason::StopSequence;
    result.matched_stop = *matched;
  } else {
    result.text = turn;
    result.stop_reason =
        split_words(turn).size() >= static_cast<std::size_t>(request.max_new_tokens)
            ? StopReason::Length
            : StopReason::EndOfMessage;
  }
  return result;
}

std::unique_ptr<LlmBackend> ScriptedFactory::make(const std::string& question) {
  auto it = book_.find(question);
  if (it == book_.end()) {
    return std::make_unique<ScriptedModel>(std::vector<std::string>{});
  }
  return std::make_unique<ScriptedModel>(it->second);
}

}  // namespace ragloop
