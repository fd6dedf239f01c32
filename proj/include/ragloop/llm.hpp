#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace ragloop {

enum class StopReason { StopSequence, Length, EndOfMessage };

struct GenerationRequest {
  std::string context;            // instruction prompt + transcript so far
  std::size_t prompt_chars = 0;   // prefix of context that is the instruction prompt
  std::vector<std::string> stop_sequences;
  int max_new_tokens = 1024;
  double temperature = 0.7;
  std::optional<std::uint64_t> seed;
};

struct GenerationResult {
  std::string text;
  StopReason stop_reason = StopReason::EndOfMessage;
  std::string matched_stop;  // set iff stop_reason == StopSequence
  double latency_seconds = 0.0;
};

struct ScriptExhaustedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Retryable transport-level failure, raised after the retry budget.
struct LlmTransportError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-retryable: the request or response violated the remote protocol.
struct LlmProtocolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Generation halts at the earliest stop-sequence occurrence (the returned
// text includes it), at max_new_tokens, or at message end.
class LlmBackend {
 public:
  virtual ~LlmBackend() = default;
  virtual GenerationResult generate(const GenerationRequest& request) = 0;
};

// Deterministic replay backend. Each generate() consumes the next turn; a
// turn containing a stop sequence is cut there, inclusive. "Tokens" are
// whitespace-delimited words for the length check, so a turn of at least
// max_new_tokens words with no stop sequence reports Length.
class ScriptedModel : public LlmBackend {
 public:
  explicit ScriptedModel(std::vector<std::string> turns);
  GenerationResult generate(const GenerationRequest& request) override;
  std::size_t cursor() const { return cursor_; }
  std::size_t remaining() const { return turns_.size() - cursor_; }

 private:
  std::vector<std::string> turns_;
  std::size_t cursor_ = 0;
};

// Hands each episode its own backend instance; the scripted backend carries
// per-episode cursor state, so concurrent episodes must not share one.
class LlmFactory {
 public:
  virtual ~LlmFactory() = default;
  virtual std::unique_ptr<LlmBackend> make(const std::string& question) = 0;
};

using ScriptBook = std::unordered_map<std::string, std::vector<std::string>>;

class ScriptedFactory : public LlmFactory {
 public:
  explicit ScriptedFactory(ScriptBook book) : book_(std::move(book)) {}
  // An unknown question gets an empty script, which exhausts immediately.
  std::unique_ptr<LlmBackend> make(const std::string& question) override;

 private:
  ScriptBook book_;
};

}  // namespace ragloop
