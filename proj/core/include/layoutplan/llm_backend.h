// Copyright 2026 The layoutplan Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LAYOUTPLAN_LLM_BACKEND_H_
#define LAYOUTPLAN_LLM_BACKEND_H_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <semaphore>
#include <string>
#include <vector>

#include "layoutplan/embedding.h"
#include "layoutplan/endpoint.h"
#include "layoutplan/errors.h"
#include "layoutplan/model.h"
#include "layoutplan/prompt_builder.h"
#include "layoutplan/retrieval.h"

namespace layoutplan {

struct GenerationParams {
  double temperature = 0.7;
  int max_tokens = 256;
  int n_samples = 1;
  std::string model_id = "gpt-3.5-turbo";
  double presence_penalty = 0.0;
  double frequency_penalty = 0.0;
  // Seeds the mock backend; remote endpoints ignore it.
  std::uint64_t seed = 0;

  // 2D tasks: 256 tokens, 5 samples. Bedroom: 512 tokens, living room: 1024,
  // one sample each. Keypoints: 512 tokens, 5 samples.
  static GenerationParams defaults_for(Task task);
  void validate() const;  // throws std::invalid_argument
};

// Completion source. Implementations are safe for concurrent calls and
// return exactly params.n_samples texts or throw BackendError.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::vector<std::string> complete(const AssembledPrompt& prompt,
                                            const GenerationParams& params) = 0;
  virtual std::string identity() const = 0;
};

// Appends one JSON object per completion call: backend, prompt hash, params,
// raw completions (or the error). Thread-safe.
class AuditLog {
 public:
  explicit AuditLog(const std::filesystem::path& path);  // truncates; throws DataError
  void record(const std::string& backend, const AssembledPrompt& prompt,
              const GenerationParams& params, const std::vector<std::string>& completions,
              const std::string& error = "");

 private:
  std::mutex mu_;
  std::ofstream out_;
};

enum class PromptForm { kChat, kPlain };

struct EndpointConfig {
  std::string base_url = "https://api.openai.com";
  std::string chat_path = "/v1/chat/completions";
  std::string completion_path = "/v1/completions";
  PromptForm form = PromptForm::kChat;
  // Environment variable holding the API key; empty for endpoints without auth.
  std::string api_key_env = "OPENAI_API_KEY";
  int timeout_s = 120;
  RetryPolicy retry;
  int max_in_flight = 4;
};

// OpenAI-compatible chat or plain completion client. Retries rate limits and
// transient failures with exponential backoff; auth and request errors fail
// at once. At most max_in_flight requests run concurrently.
class HttpBackend final : public Backend {
 public:
  explicit HttpBackend(EndpointConfig config, Sleeper sleeper = real_sleeper(),
                       AuditLog* audit = nullptr);

  std::vector<std::string> complete(const AssembledPrompt& prompt,
                                    const GenerationParams& params) override;
  std::string identity() const override;

  // Request body for one call asking for `n` choices.
  std::string request_body(const AssembledPrompt& prompt, const GenerationParams& params,
                           int n) const;

 private:
  std::vector<std::string> request_once(const AssembledPrompt& prompt,
                                        const GenerationParams& params, int n,
                                        const std::string& key);

  EndpointConfig config_;
  Sleeper sleeper_;
  AuditLog* audit_;
  std::counting_semaphore<1024> slots_;
};

// Offline stand-in for a model. Reads the exemplars out of the prompt text,
// picks the one whose condition is nearest the test condition (room-size
// distance for rooms, embedding distance for captions, earlier exemplar on
// ties) and answers with its layout. With no exemplars in the prompt the
// support set is searched instead.
//
// Jitter 0 returns the exemplar's layout text verbatim. Otherwise every
// sample is re-serialized with geometry moved by a seeded integer offset in
// [-jitter, jitter]; orientations and invisible keypoints stay put. Output is
// a pure function of (prompt, params.seed, support).
class MockBackend final : public Backend {
 public:
  explicit MockBackend(SupportSet support, int jitter_px = 0,
                       std::shared_ptr<const EmbeddingProvider> embedder = nullptr,
                       AuditLog* audit = nullptr);

  std::vector<std::string> complete(const AssembledPrompt& prompt,
                                    const GenerationParams& params) override;
  std::string identity() const override;

 private:
  SupportSet support_;
  int jitter_px_;
  std::shared_ptr<const EmbeddingProvider> embedder_;
  AuditLog* audit_;
};

struct PromptBlock {
  std::string condition;  // text after "Prompt: "
  std::string layout;     // lines after the header, trailing blank lines removed
};

/// Splits plain prompt text into its "Prompt:" blocks. The last block is the
/// test condition; its layout holds any completion prefix.
std::vector<PromptBlock> split_prompt_blocks(std::string_view plain_text);

}  // namespace layoutplan

#endif  // LAYOUTPLAN_LLM_BACKEND_H_
