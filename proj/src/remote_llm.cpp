#include "ragloop/remote_llm.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

namespace ragloop {

namespace {

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v == nullptr ? fallback : std::string(v);
}

}  // namespace

RemoteChatConfig RemoteChatConfig::from_env() {
  RemoteChatConfig cfg;
  cfg.base_url = env_or("RAGLOOP_LLM_ENDPOINT", "");
  if (cfg.base_url.empty()) {
    throw LlmProtocolError("RAGLOOP_LLM_ENDPOINT is not set");
  }
  cfg.model = env_or("RAGLOOP_LLM_MODEL", "");
  if (cfg.model.empty()) {
    throw LlmProtocolError("RAGLOOP_LLM_MODEL is not set");
  }
  cfg.api_key = env_or("RAGLOOP_LLM_API_KEY", "");
  cfg.timeout_seconds = std::stod(env_or("RAGLOOP_LLM_TIMEOUT_S", "120"));
  cfg.max_inflight = std::stoi(env_or("RAGLOOP_LLM_MAX_INFLIGHT", "8"));
  cfg.transcript_role = env_or("RAGLOOP_LLM_TRANSCRIPT_ROLE", "user");
  return cfg;
}

RemoteChatModel::RemoteChatModel(RemoteChatConfig config, std::shared_ptr<Semaphore> inflight)
    : config_(std::move(config)), inflight_(std::move(inflight)) {}

GenerationResult RemoteChatModel::generate(const GenerationRequest& request) {
  if (request.max_new_tokens < 1) {
    throw std::invalid_argument("max_new_tokens must be >= 1");
  }
  const std::size_t prompt_chars = std::min(request.prompt_chars, request.context.size());
  const std::string system_message =
      prompt_chars == 0 ? request.context : request.context.substr(0, prompt_chars);
  const std::string transcript =
      prompt_chars == 0 ? std::string() : request.context.substr(prompt_chars);

  nlohmann::json body;
  body["model"] = config_.model;
  auto& messages = body["messages"] = nlohmann::json::array();
  messages.push_back({{"role", "system"}, {"content", system_message}});
  if (!transcript.empty()) {
    messages.push_back({{"role", config_.transcript_role}, {"content", transcript}});
  }
  body["max_tokens"] = request.max_new_tokens;
  body["temperature"] = request.temperature;
  body["stop"] = request.stop_sequences;
  if (request.seed) {
    body["seed"] = *request.seed;
  }
  const std::string payload = body.dump();

  const auto started = std::chrono::steady_clock::now();
  std::string last_error;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      const double backoff = config_.initial_backoff_seconds * std::pow(2.0, attempt - 1);
      std::this_thread::sleep_for(std::chrono::duration<double>(backoff));
    }

    std::unique_ptr<SemaphoreGuard> slot;
    if (inflight_) {
      slot = std::make_unique<SemaphoreGuard>(*inflight_);
    }
    httplib::Client client(config_.base_url);
    client.set_connection_timeout(std::chrono::duration<double>(config_.timeout_seconds));
    client.set_read_timeout(std::chrono::duration<double>(config_.timeout_seconds));
    if (!config_.api_key.empty()) {
      client.set_bearer_token_auth(config_.api_key);
    }
    auto res = client.Post(config_.path, payload, "application/json");
    if (!res) {
      last_error = "transport failure: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 429 || res->status >= 500) {
      last_error = "server returned status " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw LlmProtocolError("chat endpoint rejected request with status " +
                             std::to_string(res->status) + ": " + res->body);
    }
    nlohmann::json parsed = nlohmann::json::parse(res->body, nullptr, false);
    if (parsed.is_discarded() || !parsed.contains("choices") || parsed["choices"].empty()) {
      throw LlmProtocolError("malformed chat completion response");
    }
    const auto& choice = parsed["choices"][0];
    std::string text = choice.contains("message") ? choice["message"].value("content", "")
                                                  : choice.value("text", "");
    const std::string finish = choice.value("finish_reason", "");

    GenerationResult result;
    result.latency_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    std::size_t earliest = std::string::npos;
    const std::string* matched = nullptr;
    for (const auto& stop : request.stop_sequences) {
      if (stop.empty()) {
        continue;
      }
      const std::size_t at = text.find(stop);
      if (at != std::string::npos && at < earliest) {
        earliest = at;
        matched = &stop;
      }
    }
    if (matched != nullptr) {
      result.text = text.substr(0, earliest + matched->size());
      result.stop_reason = StopReason::StopSequence;
      result.matched_stop = *matched;
    } else {
      result.text = std::move(text);
      result.stop_reason =
          finish == "length" ? StopReason::Length : StopReason::EndOfMessage;
    }
    return result;
  }
  throw LlmTransportError("chat endpoint unreachable after " +
                          std::to_string(config_.max_retries + 1) + " attempts: " + last_error);
}

RemoteChatFactory::RemoteChatFactory(RemoteChatConfig config)
    : config_(std::move(config)),
      inflight_(std::make_shared<Semaphore>(std::max(config_.max_inflight, 1))) {}

std::unique_ptr<LlmBackend> RemoteChatFactory::make(const std::string&) {
  return std::make_unique<RemoteChatModel>(config_, inflight_);
}

}  // namespace ragloop
