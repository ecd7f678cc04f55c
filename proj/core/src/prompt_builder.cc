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

#include "layoutplan/prompt_builder.h"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "embedded_data.h"

namespace layoutplan {

std::string_view to_string(Role r) {
  switch (r) {
    case Role::kSystem:
      return "system";
    case Role::kUser:
      return "user";
    case Role::kAssistant:
      return "assistant";
  }
  return "user";
}

void FurnitureVocabulary::validate() const {
  if (categories.empty()) throw std::invalid_argument("furniture vocabulary is empty");
  if (frequencies.empty()) return;
  if (frequencies.size() != categories.size()) {
    throw std::invalid_argument(fmt::format("{} frequencies for {} categories", frequencies.size(),
                                            categories.size()));
  }
  double sum = 0;
  for (const auto& [cat, p] : frequencies) {
    if (p < 0) throw std::invalid_argument(fmt::format("negative frequency for '{}'", cat));
    sum += p;
  }
  // Published tables round to four decimals, so allow their slack.
  if (std::abs(sum - 1.0) > 1e-3) {
    throw std::invalid_argument(fmt::format("furniture frequencies sum to {}, not 1", sum));
  }
}

FurnitureVocabulary FurnitureVocabulary::bedroom() {
  FurnitureVocabulary v;
  v.frequencies = {
      {"armchair", 0.0045},       {"bookshelf", 0.0076},      {"cabinet", 0.0221},
      {"ceiling_lamp", 0.062},    {"chair", 0.024},           {"children_cabinet", 0.0075},
      {"coffee_table", 0.0013},   {"desk", 0.0172},           {"double_bed", 0.1682},
      {"dressing_chair", 0.0063}, {"dressing_table", 0.0213}, {"floor_lamp", 0.0093},
      {"kids_bed", 0.0079},       {"nightstand", 0.2648},     {"pendant_lamp", 0.1258},
      {"shelf", 0.0086},          {"single_bed", 0.0211},     {"sofa", 0.0018},
      {"stool", 0.012},           {"table", 0.0201},          {"tv_stand", 0.0308},
      {"wardrobe", 0.1557}};
  for (const auto& [cat, p] : v.frequencies) v.categories.push_back(cat);
  return v;
}

std::string flatten_chat(const std::vector<ChatTurn>& turns) {
  std::string out;
  for (std::size_t i = 0; i < turns.size(); ++i) {
    if (i > 0) {
      const bool answer = turns[i - 1].role == Role::kUser && turns[i].role == Role::kAssistant;
      out += answer ? "\n" : "\n\n";
    }
    out += turns[i].text;
  }
  return out;
}

std::string_view builtin_instruction_template(const DialectSpec& spec) {
  const std::string name =
      fmt::format("instructions/{}_{}_{}.txt", to_string(spec.dialect),
                  spec.style.use_css ? "css" : "plain",
                  spec.style.use_normalized_ints ? "px" : "float");
  auto text = detail::embedded_file(name);
  if (!text) throw std::logic_error("missing built-in template " + name);
  return *text;
}

namespace {

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos;
       pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
}

bool contains(std::string_view s, std::string_view needle) {
  return s.find(needle) != std::string_view::npos;
}

}  // namespace

std::string render_instruction(const DialectSpec& spec, const CanvasSpec& canvas,
                               const FurnitureVocabulary* vocab,
                               std::optional<std::string_view> template_text) {
  const std::string_view tmpl = template_text ? *template_text : builtin_instruction_template(spec);
  std::string vocab_text;
  std::string freq_text;
  if (vocab != nullptr) {
    vocab->validate();
    vocab_text = fmt::format("{}", fmt::join(vocab->categories, ", "));
    for (const auto& [cat, p] : vocab->frequencies) {
      if (!freq_text.empty()) freq_text += "; ";
      freq_text += fmt::format("{}: {}", cat, p);
    }
  }
  std::string out;
  std::size_t start = 0;
  while (start <= tmpl.size()) {
    std::size_t end = tmpl.find('\n', start);
    if (end == std::string_view::npos) end = tmpl.size();
    std::string line(tmpl.substr(start, end - start));
    start = end + 1;
    if (contains(line, "{vocab}") && vocab_text.empty()) continue;
    if (contains(line, "{freqs}") && freq_text.empty()) continue;
    replace_all(line, "{canvas_w}", std::to_string(canvas.width_px));
    replace_all(line, "{canvas_h}", std::to_string(canvas.height_px));
    replace_all(line, "{vocab}", vocab_text);
    replace_all(line, "{freqs}", freq_text);
    out += line;
    out += '\n';
  }
  while (!out.empty() && (out.back() == '\n' || out.back() == ' ')) out.pop_back();
  return out;
}

std::string render_condition(const ConditionText& c, const DialectSpec& spec,
                             const CanvasSpec& canvas) {
  c.validate();
  if (c.kind == ConditionKind::kCaption) return c.text;
  const int extent = canvas.max_extent_px();
  const double length_px = normalize(*c.room_length_m, canvas.meters_per_canvas, extent);
  const double width_px = normalize(*c.room_width_m, canvas.meters_per_canvas, extent);
  if (spec.style.use_normalized_ints) {
    return fmt::format("Room Type: {}, Room Size: max length {}px, max width {}px", c.text,
                       std::llround(length_px), std::llround(width_px));
  }
  return fmt::format("Room Type: {}, Room Size: max length {:.2f}, max width {:.2f}", c.text,
                     length_px / extent, width_px / extent);
}

std::string_view layout_header(Dialect d) {
  return d == Dialect::kKeypoint ? "Keypoints:" : "Layout:";
}

AssembledPrompt build(const ConditionText& condition, const ExemplarSet& exemplars,
                      const PromptConfig& cfg) {
  const DialectSpec& spec = cfg.dialect_spec;
  if (exemplars.empty() && !cfg.allow_zero_shot) {
    throw std::invalid_argument("no exemplars and zero-shot prompting is not enabled");
  }
  const std::string header(layout_header(spec.dialect));
  auto stub = [&](const ConditionText& c) {
    return fmt::format("Prompt: {}\n{}", render_condition(c, spec, cfg.canvas), header);
  };

  AssembledPrompt out;
  out.dialect = spec;
  out.canvas = cfg.canvas;

  std::string instruction;
  if (cfg.include_instruction) {
    const FurnitureVocabulary* vocab = cfg.vocabulary ? &*cfg.vocabulary : nullptr;
    std::optional<std::string_view> tmpl;
    if (cfg.instruction_template) tmpl = *cfg.instruction_template;
    instruction = render_instruction(spec, cfg.canvas, vocab, tmpl);
  }
  std::string pending_user = instruction.empty() ? "" : instruction + "\n\n";
  out.plain_text = pending_user;

  for (const auto& ex : exemplars.items) {
    if (ex.layout.dialect != spec.dialect) {
      throw std::invalid_argument(fmt::format("exemplar '{}' is {}, prompt dialect is {}", ex.id,
                                              to_string(ex.layout.dialect),
                                              to_string(spec.dialect)));
    }
    const std::string body = serialize(snap_to_dialect(ex.layout, spec), spec);
    const std::string question = stub(ex.condition);
    out.plain_text += question + "\n" + body + "\n\n";
    out.chat_turns.push_back({Role::kUser, pending_user + question});
    out.chat_turns.push_back({Role::kAssistant, body});
    pending_user.clear();
  }

  std::string tail = stub(condition);
  if (cfg.completion_prefix) {
    const Layout& prefix = *cfg.completion_prefix;
    if (prefix.dialect != spec.dialect) {
      throw std::invalid_argument("completion prefix dialect does not match the prompt");
    }
    out.prefix_element_count = prefix.elements.size();
    if (!prefix.elements.empty()) {
      tail += "\n" + serialize(snap_to_dialect(prefix, spec), spec) + "\n";
    }
  }
  out.plain_text += tail;
  out.chat_turns.push_back({Role::kUser, pending_user + tail});

  if (cfg.char_budget > 0 && out.plain_text.size() > cfg.char_budget) {
    out.warnings.push_back(fmt::format("prompt has {} characters, budget is {}",
                                       out.plain_text.size(), cfg.char_budget));
  }
  return out;
}

}  // namespace layoutplan
