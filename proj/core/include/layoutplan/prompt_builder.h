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

// Prompt text layout (plain form):
//
//   <instruction>
//   <blank line>
//   Prompt: <exemplar condition>
//   Layout:
//   <exemplar layout lines>
//   <blank line>
//   ...
//   Prompt: <test condition>
//   Layout:
//
// The keypoint dialect writes "Keypoints:" instead of "Layout:". A scene
// completion prefix follows the last header as open layout lines.

#ifndef LAYOUTPLAN_PROMPT_BUILDER_H_
#define LAYOUTPLAN_PROMPT_BUILDER_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "layoutplan/css_dsl.h"
#include "layoutplan/model.h"
#include "layoutplan/retrieval.h"

namespace layoutplan {

enum class Role { kSystem, kUser, kAssistant };

std::string_view to_string(Role r);

struct ChatTurn {
  Role role = Role::kUser;
  std::string text;

  bool operator==(const ChatTurn&) const = default;
};

struct FurnitureVocabulary {
  std::vector<std::string> categories;
  // Optional; when present, one entry per category, summing to 1 within 1e-3.
  std::vector<std::pair<std::string, double>> frequencies;

  void validate() const;  // throws std::invalid_argument

  // The 22 bedroom categories and their overall frequencies.
  static FurnitureVocabulary bedroom();
};

struct PromptConfig {
  DialectSpec dialect_spec = DialectSpec::make(Dialect::kImage2d);
  CanvasSpec canvas = CanvasSpec::image_default();
  bool include_instruction = true;
  bool allow_zero_shot = false;
  // Replaces the built-in template for the dialect and style.
  std::optional<std::string> instruction_template;
  std::optional<FurnitureVocabulary> vocabulary;
  // Partial layout the model is asked to continue.
  std::optional<Layout> completion_prefix;
  // Warn when the plain prompt is longer than this; 0 disables the check.
  std::size_t char_budget = 0;

  // Normalized integer pixels, or canvas fractions.
  bool include_normalization() const { return dialect_spec.style.use_normalized_ints; }
};

struct AssembledPrompt {
  std::string plain_text;
  std::vector<ChatTurn> chat_turns;
  DialectSpec dialect;
  CanvasSpec canvas;
  // Elements of the completion prefix; the model output continues after them.
  std::size_t prefix_element_count = 0;
  std::vector<std::string> warnings;
};

/// Joins chat turns back into one string: "\n" between a user turn and the
/// assistant turn answering it, "\n\n" elsewhere. For prompts from build()
/// the result equals plain_text.
std::string flatten_chat(const std::vector<ChatTurn>& turns);

/// Built-in template for a dialect and style, e.g. instructions/image2d_css_px.txt.
std::string_view builtin_instruction_template(const DialectSpec& spec);

/// Fills {canvas_w}, {canvas_h}, {vocab} and {freqs}. Lines that refer to a
/// vocabulary placeholder are dropped when no vocabulary is given, as are
/// {freqs} lines when it has no frequencies. Trailing blank lines are removed.
std::string render_instruction(const DialectSpec& spec, const CanvasSpec& canvas,
                               const FurnitureVocabulary* vocab = nullptr,
                               std::optional<std::string_view> template_text = std::nullopt);

/// Condition as it appears after "Prompt: ". Room specs render as
/// "Room Type: Bedroom, Room Size: max length 256px, max width 256px", or with
/// canvas fractions when the dialect is not normalized.
std::string render_condition(const ConditionText& c, const DialectSpec& spec,
                             const CanvasSpec& canvas);

/// "Layout:" or "Keypoints:".
std::string_view layout_header(Dialect d);

/// Assembles the prompt. Exemplar layouts are snapped to the dialect grid
/// before serialization. Throws std::invalid_argument when an exemplar or the
/// completion prefix has a different dialect, or when `exemplars` is empty
/// and zero-shot is not allowed.
AssembledPrompt build(const ConditionText& condition, const ExemplarSet& exemplars,
                      const PromptConfig& cfg);

}  // namespace layoutplan

#endif  // LAYOUTPLAN_PROMPT_BUILDER_H_
