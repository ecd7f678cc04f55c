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

#include "layoutplan/llm_backend.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

#include "http_client.h"
#include "json_codec.h"
#include "layoutplan/css_dsl.h"
#include "layoutplan/hashing.h"

namespace layoutplan {

using detail::ojson;

GenerationParams GenerationParams::defaults_for(Task task) {
  GenerationParams p;
  switch (task) {
    case Task::kNumerical:
    case Task::kSpatial:
      p.max_tokens = 256;
      p.n_samples = 5;
      break;
    case Task::kBedroom:
      p.max_tokens = 512;
      p.n_samples = 1;
      break;
    case Task::kLivingRoom:
      p.max_tokens = 1024;
      p.n_samples = 1;
      break;
    case Task::kKeypoint:
      p.max_tokens = 512;
      p.n_samples = 5;
      break;
  }
  return p;
}

void GenerationParams::validate() const {
  if (!(temperature >= 0)) throw std::invalid_argument("temperature must be >= 0");
  if (max_tokens <= 0) throw std::invalid_argument("max_tokens must be positive");
  if (n_samples <= 0) throw std::invalid_argument("n_samples must be positive");
}

// ---- audit log -----------------------------------------------------------

AuditLog::AuditLog(const std::filesystem::path& path)
    : out_(path, std::ios::binary | std::ios::trunc) {
  if (!out_) throw DataError(fmt::format("{}: cannot open audit log", path.string()));
}

void AuditLog::record(const std::string& backend, const AssembledPrompt& prompt,
                      const GenerationParams& params,
                      const std::vector<std::string>& completions, const std::string& error) {
  ojson j;
  j["backend"] = backend;
  j["prompt_hash"] = hex64(fnv1a64(prompt.plain_text));
  j["params"] = {{"model", params.model_id},
                 {"temperature", params.temperature},
                 {"max_tokens", params.max_tokens},
                 {"n", params.n_samples},
                 {"presence_penalty", params.presence_penalty},
                 {"frequency_penalty", params.frequency_penalty},
                 {"seed", params.seed}};
  j["completions"] = completions;
  if (!error.empty()) j["error"] = error;
  const std::string line = detail::dump_line(j);
  std::lock_guard<std::mutex> lock(mu_);
  out_ << line << '\n';
  out_.flush();
}

// ---- HTTP ----------------------------------------------------------------

HttpBackend::HttpBackend(EndpointConfig config, Sleeper sleeper, AuditLog* audit)
    : config_(std::move(config)),
      sleeper_(std::move(sleeper)),
      audit_(audit),
      slots_(std::clamp(config_.max_in_flight, 1, 1024)) {}

std::string HttpBackend::identity() const {
  return fmt::format("http:{}{}", config_.base_url,
                     config_.form == PromptForm::kChat ? config_.chat_path
                                                       : config_.completion_path);
}

std::string HttpBackend::request_body(const AssembledPrompt& prompt,
                                      const GenerationParams& params, int n) const {
  ojson j;
  j["model"] = params.model_id;
  if (config_.form == PromptForm::kChat) {
    ojson messages = ojson::array();
    for (const auto& t : prompt.chat_turns) {
      messages.push_back({{"role", std::string(to_string(t.role))}, {"content", t.text}});
    }
    j["messages"] = std::move(messages);
  } else {
    j["prompt"] = prompt.plain_text;
  }
  j["temperature"] = params.temperature;
  j["max_tokens"] = params.max_tokens;
  j["n"] = n;
  j["presence_penalty"] = params.presence_penalty;
  j["frequency_penalty"] = params.frequency_penalty;
  return j.dump();
}

std::vector<std::string> HttpBackend::request_once(const AssembledPrompt& prompt,
                                                   const GenerationParams& params, int n,
                                                   const std::string& key) {
  const std::string& path =
      config_.form == PromptForm::kChat ? config_.chat_path : config_.completion_path;
  const std::string body = request_body(prompt, params, n);
  return with_retries(config_.retry, sleeper_, [&] {
    slots_.acquire();
    detail::HttpResponse res;
    try {
      res = detail::post_json(config_.base_url, path, key, body, config_.timeout_s);
    } catch (...) {
      slots_.release();
      throw;
    }
    slots_.release();
    if (res.status < 200 || res.status >= 300) throw detail::error_for_status(res.status, res.body);
    std::vector<std::pair<int, std::string>> choices;
    try {
      const auto j = nlohmann::json::parse(res.body);
      const auto& arr = j.at("choices");
      if (!arr.is_array() || arr.empty()) throw std::runtime_error("no choices");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto& c = arr[i];
        const int index = c.contains("index") ? c.at("index").get<int>() : static_cast<int>(i);
        std::string text = config_.form == PromptForm::kChat
                               ? c.at("message").at("content").get<std::string>()
                               : c.at("text").get<std::string>();
        choices.emplace_back(index, std::move(text));
      }
    } catch (const std::exception& e) {
      throw BackendError(BackendError::Kind::kMalformedResponse,
                         fmt::format("completion response: {}", e.what()), res.status);
    }
    std::stable_sort(choices.begin(), choices.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::string> texts;
    for (auto& c : choices) texts.push_back(std::move(c.second));
    return texts;
  });
}

std::vector<std::string> HttpBackend::complete(const AssembledPrompt& prompt,
                                               const GenerationParams& params) {
  params.validate();
  std::vector<std::string> out;
  try {
    const std::string key = read_credential(config_.api_key_env);
    // Servers that ignore "n" answer with one choice; ask again for the rest.
    for (int round = 0; round < params.n_samples && static_cast<int>(out.size()) < params.n_samples;
         ++round) {
      auto texts = request_once(prompt, params, params.n_samples - static_cast<int>(out.size()), key);
      for (auto& t : texts) {
        if (static_cast<int>(out.size()) < params.n_samples) out.push_back(std::move(t));
      }
    }
    if (static_cast<int>(out.size()) != params.n_samples) {
      throw BackendError(BackendError::Kind::kMalformedResponse,
                         fmt::format("got {} of {} completions", out.size(), params.n_samples));
    }
  } catch (const BackendError& e) {
    if (audit_ != nullptr) audit_->record(identity(), prompt, params, out, e.what());
    throw;
  }
  if (audit_ != nullptr) audit_->record(identity(), prompt, params, out);
  return out;
}

// ---- prompt blocks -------------------------------------------------------

std::vector<PromptBlock> split_prompt_blocks(std::string_view text) {
  std::vector<PromptBlock> blocks;
  bool in_layout = false;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (line.rfind("Prompt: ", 0) == 0) {
      blocks.push_back({std::string(line.substr(8)), ""});
      in_layout = false;
      continue;
    }
    if (blocks.empty()) continue;
    if (!in_layout) {
      if (line == "Layout:" || line == "Keypoints:") in_layout = true;
      continue;
    }
    auto& layout = blocks.back().layout;
    if (!layout.empty()) layout += '\n';
    layout += line;
  }
  for (auto& b : blocks) {
    while (!b.layout.empty() && (b.layout.back() == '\n' || b.layout.back() == ' ')) {
      b.layout.pop_back();
    }
  }
  return blocks;
}

// ---- mock ----------------------------------------------------------------

namespace {

std::optional<double> number_after(std::string_view s, std::string_view key) {
  const auto pos = s.find(key);
  if (pos == std::string_view::npos) return std::nullopt;
  const char* first = s.data() + pos + key.size();
  double v = 0;
  auto res = std::from_chars(first, s.data() + s.size(), v);
  if (res.ec != std::errc()) return std::nullopt;
  return v;
}

struct RoomDims {
  double length;
  double width;
};

std::optional<RoomDims> room_dims(std::string_view condition) {
  auto l = number_after(condition, "max length ");
  auto w = number_after(condition, "max width ");
  if (!l || !w) return std::nullopt;
  return RoomDims{*l, *w};
}

void jitter_value(double& v, std::mt19937_64& rng, int j, bool nonnegative) {
  const auto span = static_cast<std::uint64_t>(2 * j + 1);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t r = 0;
  do {
    r = rng();
  } while (r >= limit);
  v += static_cast<double>(static_cast<long long>(r % span) - j);
  if (nonnegative && v < 0) v = 0;
}

Element jitter_element(Element el, std::mt19937_64& rng, int j) {
  if (auto* e2 = std::get_if<Element2D>(&el)) {
    jitter_value(e2->width, rng, j, true);
    jitter_value(e2->height, rng, j, true);
    jitter_value(e2->left, rng, j, false);
    jitter_value(e2->top, rng, j, false);
  } else if (auto* e3 = std::get_if<Element3D>(&el)) {
    jitter_value(e3->length, rng, j, true);
    jitter_value(e3->width, rng, j, true);
    jitter_value(e3->height, rng, j, true);
    jitter_value(e3->left, rng, j, false);
    jitter_value(e3->top, rng, j, false);
    jitter_value(e3->depth, rng, j, false);
  } else {
    for (auto& n : std::get<KeypointSet>(el).nodes) {
      if (!n.visible()) continue;
      const KeypointPos before = n;
      jitter_value(n.left, rng, j, false);
      jitter_value(n.top, rng, j, false);
      if (!n.visible()) n = before;
    }
  }
  return el;
}

}  // namespace

MockBackend::MockBackend(SupportSet support, int jitter_px,
                         std::shared_ptr<const EmbeddingProvider> embedder, AuditLog* audit)
    : support_(std::move(support)),
      jitter_px_(jitter_px),
      embedder_(embedder ? std::move(embedder)
                         : std::make_shared<HashedBagOfWordsEmbedder>()),
      audit_(audit) {
  if (support_.empty()) throw std::invalid_argument("mock backend needs a nonempty support set");
  if (jitter_px_ < 0) throw std::invalid_argument("jitter must be >= 0");
}

std::string MockBackend::identity() const {
  return fmt::format("mock:jitter={}:{}", jitter_px_, embedder_->name());
}

std::vector<std::string> MockBackend::complete(const AssembledPrompt& prompt,
                                               const GenerationParams& params) {
  params.validate();
  auto blocks = split_prompt_blocks(prompt.plain_text);
  if (blocks.empty()) {
    throw BackendError(BackendError::Kind::kBadRequest, "prompt has no \"Prompt:\" line");
  }
  const std::string test = blocks.back().condition;
  blocks.pop_back();
  if (blocks.empty()) {
    for (const auto& r : support_.records()) {
      Layout snapped = snap_to_dialect(r.layout, prompt.dialect);
      blocks.push_back({render_condition(r.condition, prompt.dialect, prompt.canvas),
                        r.layout.dialect == prompt.dialect.dialect
                            ? serialize(snapped, prompt.dialect)
                            : std::string()});
    }
  }

  std::size_t best = 0;
  const auto test_room = room_dims(test);
  if (test_room) {
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      const auto dims = room_dims(blocks[i].condition);
      if (!dims) continue;
      const double dl = dims->length - test_room->length;
      const double dw = dims->width - test_room->width;
      const double d = dl * dl + dw * dw;
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
  } else {
    const Embedding q = embedder_->embed(test);
    const bool q_zero = std::all_of(q.begin(), q.end(), [](double x) { return x == 0; });
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < blocks.size() && !q_zero; ++i) {
      const Embedding v = embedder_->embed(blocks[i].condition);
      if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0; })) continue;
      const double d = distance_embedding(q, v);
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
  }

  const std::string& source = blocks[best].layout;
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(params.n_samples));
  if (jitter_px_ == 0 && prompt.prefix_element_count == 0) {
    out.assign(static_cast<std::size_t>(params.n_samples), source);
  } else {
    const ParseOutcome parsed = parse(source, prompt.dialect, prompt.canvas);
    const std::uint64_t base = mix64(params.seed ^ fnv1a64(prompt.plain_text));
    for (int s = 0; s < params.n_samples; ++s) {
      std::mt19937_64 rng(mix64(base + static_cast<std::uint64_t>(s)));
      Layout l = parsed.layout;
      const auto skip = std::min(prompt.prefix_element_count, l.elements.size());
      l.elements.erase(l.elements.begin(), l.elements.begin() + static_cast<std::ptrdiff_t>(skip));
      if (jitter_px_ > 0) {
        for (auto& el : l.elements) el = jitter_element(std::move(el), rng, jitter_px_);
      }
      out.push_back(serialize(l, prompt.dialect));
    }
  }
  if (audit_ != nullptr) audit_->record(identity(), prompt, params, out);
  return out;
}

}  // namespace layoutplan
