#pragma once

#include <memory>

#include "ragloop/llm.hpp"
#include "ragloop/parallel.hpp"

namespace ragloop {

struct RemoteChatConfig {
  std::string base_url;                  // RAGLOOP_LLM_ENDPOINT
  std::string path = "/v1/chat/completions";
  std::string model;                     // RAGLOOP_LLM_MODEL
  std::string api_key;                   // RAGLOOP_LLM_API_KEY
  double timeout_seconds = 120.0;        // RAGLOOP_LLM_TIMEOUT_S
  int max_retries = 3;
  double initial_backoff_seconds = 0.2;
  int max_inflight = 8;                  // RAGLOOP_LLM_MAX_INFLIGHT
  // How the accumulated transcript travels: "user" sends it as a user
  // message, "assistant" as an assistant message for servers that support
  // continuation (RAGLOOP_LLM_TRANSCRIPT_ROLE).
  std::string transcript_role = "user";

  static RemoteChatConfig from_env();
};

// Chat-completion JSON over HTTP. The instruction prompt travels as the
// system message and the transcript as the conversation. Returned text is
// cut at the earliest stop-sequence occurrence (inclusive) regardless of
// server behavior, so the stop invariant holds even when the server strips
// or keeps stop strings.
class RemoteChatModel : public LlmBackend {
 public:
  explicit RemoteChatModel(RemoteChatConfig config,
                           std::shared_ptr<Semaphore> inflight = nullptr);
  GenerationResult generate(const GenerationRequest& request) override;

 private:
  RemoteChatConfig config_;
  std::shared_ptr<Semaphore> inflight_;
};

// Shares one in-flight cap across all episodes.
class RemoteChatFactory : public LlmFactory {
 public:
  explicit RemoteChatFactory(RemoteChatConfig config);
  std::unique_ptr<LlmBackend> make(const std::string& question) override;

 private:
  RemoteChatConfig config_;
  std::shared_ptr<Semaphore> inflight_;
};

}  // namespace ragloop
