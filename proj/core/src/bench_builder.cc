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

#include "layoutplan/bench_builder.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "embedded_data.h"
#include "json_codec.h"
#include "layoutplan/errors.h"
#include "layoutplan/hashing.h"
#include "layoutplan/layout_io.h"

namespace layoutplan {

using detail::ojson;

std::string_view to_string(Subtype s) {
  switch (s) {
    case Subtype::kSingleCategory:
      return "single_category";
    case Subtype::kTwoCategories:
      return "two_categories";
    case Subtype::kComparison:
      return "comparison";
    case Subtype::kNatural:
      return "natural";
  }
  return "natural";
}

Subtype subtype_from_string(std::string_view s) {
  for (Subtype t : {Subtype::kSingleCategory, Subtype::kTwoCategories, Subtype::kComparison,
                    Subtype::kNatural}) {
    if (to_string(t) == s) return t;
  }
  throw std::invalid_argument(fmt::format("unknown subtype '{}'", s));
}

// ---- record JSON ---------------------------------------------------------

std::string to_json_line(const PromptRecord& r) {
  ojson j;
  j["id"] = r.id;
  j["task"] = std::string(to_string(r.task));
  j["subtype"] = std::string(to_string(r.subtype));
  j["text"] = r.text;
  j["source_image_id"] = r.source_image_id;
  ojson counts = ojson::object();
  for (const auto& [c, n] : r.gt_counts) counts[c] = n;
  j["gt_counts"] = std::move(counts);
  if (r.comparison) {
    j["comparison"] = {{"cat_a", r.comparison->cat_a},
                       {"cat_b", r.comparison->cat_b},
                       {"relation", std::string(to_string(r.comparison->relation))}};
  }
  if (r.gt_relation) {
    j["gt_relation"] = {{"relation", std::string(to_string(r.gt_relation->relation))},
                        {"cat_a", r.gt_relation->cat_a},
                        {"cat_b", r.gt_relation->cat_b}};
  }
  j["gt_layout"] = detail::layout_to_json(r.gt_layout);
  return detail::dump_line(j);
}

PromptRecord prompt_record_from_json(std::string_view line) {
  const auto j = detail::parse_json(line, "prompt record");
  try {
    PromptRecord r;
    r.id = j.at("id").get<std::string>();
    r.task = task_from_string(j.at("task").get<std::string>());
    r.subtype = subtype_from_string(j.at("subtype").get<std::string>());
    r.text = j.at("text").get<std::string>();
    r.source_image_id = j.value("source_image_id", std::int64_t{0});
    if (auto it = j.find("gt_counts"); it != j.end()) {
      for (const auto& [c, n] : it->items()) {
        if (n.get<int>() > 0) r.gt_counts[c] = n.get<int>();
      }
    }
    if (auto it = j.find("comparison"); it != j.end()) {
      r.comparison = ComparisonLabel{it->at("cat_a").get<std::string>(),
                                     it->at("cat_b").get<std::string>(),
                                     count_relation_from_string(it->at("relation").get<std::string>())};
    }
    if (auto it = j.find("gt_relation"); it != j.end()) {
      r.gt_relation = SpatialLabel{
          spatial_relation_from_string(it->at("relation").get<std::string>()),
          it->at("cat_a").get<std::string>(), it->at("cat_b").get<std::string>()};
    }
    r.gt_layout = detail::layout_from_json(j.at("gt_layout"));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(fmt::format("prompt record: {}", e.what()));
  } catch (const std::invalid_argument& e) {
    throw DataError(fmt::format("prompt record: {}", e.what()));
  }
}

std::vector<PromptRecord> read_prompt_records(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  std::vector<PromptRecord> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(prompt_record_from_json(line));
    } catch (const DataError& e) {
      throw DataError(fmt::format("{}:{}: {}", path.string(), lineno, e.what()));
    }
  }
  return out;
}

void write_prompt_records(const std::filesystem::path& path,
                          const std::vector<PromptRecord>& records) {
  std::string text;
  for (const auto& r : records) {
    text += to_json_line(r);
    text += '\n';
  }
  write_text_file(path, text);
}

// ---- wording -------------------------------------------------------------

std::string_view number_word(int n) {
  static constexpr std::array<std::string_view, 5> kWords = {"one", "two", "three", "four",
                                                             "five"};
  if (n < 1 || n > 5) throw std::invalid_argument(fmt::format("no number word for {}", n));
  return kWords[static_cast<std::size_t>(n - 1)];
}

std::string pluralize(std::string_view noun) {
  static const std::map<std::string, std::string, std::less<>> kIrregular = {
      {"person", "people"},   {"mouse", "mice"},       {"sheep", "sheep"},
      {"knife", "knives"},    {"skis", "skis"},        {"scissors", "scissors"},
      {"broccoli", "broccoli"}, {"child", "children"}, {"man", "men"},
      {"woman", "women"},     {"shelf", "shelves"},    {"skateboard", "skateboards"}};
  // Inflect the head noun, the last word.
  const auto space = noun.rfind(' ');
  const std::string_view head = space == std::string_view::npos ? noun : noun.substr(space + 1);
  const std::string prefix(noun.substr(0, noun.size() - head.size()));
  if (auto it = kIrregular.find(head); it != kIrregular.end()) return prefix + it->second;
  std::string h(head);
  auto ends_with = [&](std::string_view suf) {
    return h.size() >= suf.size() && h.compare(h.size() - suf.size(), suf.size(), suf) == 0;
  };
  if (ends_with("s") || ends_with("x") || ends_with("z") || ends_with("ch") || ends_with("sh")) {
    return prefix + h + "es";
  }
  if (h.size() >= 2 && h.back() == 'y' && std::string_view("aeiou").find(h[h.size() - 2]) ==
                                              std::string_view::npos) {
    return prefix + h.substr(0, h.size() - 1) + "ies";
  }
  return prefix + h + "s";
}

std::string_view article(std::string_view noun) {
  if (noun.empty()) return "a";
  const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(noun.front())));
  return std::string_view("aeiou").find(c) == std::string_view::npos ? "a" : "an";
}

namespace {

std::string capitalize(std::string_view s) {
  std::string out(s);
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

std::string counted(int n, const std::string& noun) {
  return fmt::format("{} {}", number_word(n), n == 1 ? noun : pluralize(noun));
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

// Whole-word occurrence of `needle` in `hay` at or after `from`.
std::size_t find_word(std::string_view hay, std::string_view needle, std::size_t from = 0) {
  for (std::size_t pos = hay.find(needle, from); pos != std::string_view::npos;
       pos = hay.find(needle, pos + 1)) {
    const bool left_ok = pos == 0 || !is_word_char(hay[pos - 1]);
    const std::size_t end = pos + needle.size();
    const bool right_ok = end >= hay.size() || !is_word_char(hay[end]);
    if (left_ok && right_ok) return pos;
  }
  return std::string_view::npos;
}

bool has_crowd(const AnnotationRecord& r) {
  return std::any_of(r.boxes.begin(), r.boxes.end(), [](const auto& b) { return b.crowd; });
}

std::string record_id(Task task, Subtype subtype, std::int64_t image_id) {
  return fmt::format("{}-{}-{}", to_string(task), to_string(subtype), image_id);
}

PromptRecord base_record(const AnnotationRecord& r, Task task, Subtype subtype, std::string text,
                         const CanvasSpec& canvas) {
  PromptRecord p;
  p.id = record_id(task, subtype, r.image_id);
  p.task = task;
  p.subtype = subtype;
  p.gt_layout = rescale_boxes(r, canvas, text);
  p.text = std::move(text);
  p.gt_counts = count_categories(p.gt_layout);
  p.source_image_id = r.image_id;
  return p;
}

}  // namespace

CountVector box_counts(const AnnotationRecord& r) {
  CountVector out;
  for (const auto& b : r.boxes) {
    if (!b.crowd) ++out[normalize_category(b.category)];
  }
  return out;
}

Layout rescale_boxes(const AnnotationRecord& r, const CanvasSpec& canvas, std::string caption) {
  if (r.image_width <= 0 || r.image_height <= 0) {
    throw DataError(fmt::format("image {} has no size", r.image_id));
  }
  Layout l;
  l.dialect = Dialect::kImage2d;
  l.canvas = canvas;
  l.condition = ConditionText::caption(std::move(caption));
  const double sx = static_cast<double>(canvas.width_px) / r.image_width;
  const double sy = static_cast<double>(canvas.height_px) / r.image_height;
  for (const auto& b : r.boxes) {
    if (b.crowd) continue;
    Element2D e;
    e.category = normalize_category(b.category);
    e.left = std::round(b.left * sx);
    e.top = std::round(b.top * sy);
    e.width = std::round(b.width * sx);
    e.height = std::round(b.height * sy);
    l.elements.emplace_back(std::move(e));
  }
  return l;
}

std::vector<AnnotationRecord> filter_numerical(const std::vector<AnnotationRecord>& records) {
  std::vector<AnnotationRecord> out;
  for (const auto& r : records) {
    if (r.boxes.empty() || has_crowd(r)) continue;
    const CountVector counts = box_counts(r);
    if (counts.empty() || counts.size() > 2) continue;
    if (std::all_of(counts.begin(), counts.end(),
                    [](const auto& kv) { return kv.second >= 1 && kv.second <= 5; })) {
      out.push_back(r);
    }
  }
  return out;
}

std::vector<PromptRecord> make_template_prompts(const AnnotationRecord& r,
                                                const CanvasSpec& canvas) {
  std::vector<PromptRecord> out;
  const CountVector counts = box_counts(r);
  if (counts.size() == 1) {
    const auto& [cat, n] = *counts.begin();
    std::string text = n == 1 ? fmt::format("There is one {} in the photo.", cat)
                              : fmt::format("There are {} in the photo.", counted(n, cat));
    out.push_back(base_record(r, Task::kNumerical, Subtype::kSingleCategory, std::move(text), canvas));
    return out;
  }
  if (counts.size() != 2) return out;

  std::vector<std::pair<std::string, int>> by_count(counts.begin(), counts.end());
  std::stable_sort(by_count.begin(), by_count.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  const auto& [c1, n1] = by_count[0];
  const auto& [c2, n2] = by_count[1];
  out.push_back(base_record(
      r, Task::kNumerical, Subtype::kTwoCategories,
      fmt::format("{} with {} in the picture.", capitalize(counted(n1, c1)), counted(n2, c2)),
      canvas));

  // The stated category is the alphabetically first one.
  const auto& [a, na] = *counts.begin();
  const auto& [b, nb] = *std::next(counts.begin());
  const CountRelation rel =
      na < nb ? CountRelation::kFewer : (na == nb ? CountRelation::kEqual : CountRelation::kMore);
  std::string text;
  if (rel == CountRelation::kEqual) {
    text = fmt::format("A picture of {} with an equal number of {}.", counted(na, a), pluralize(b));
  } else {
    text = fmt::format("A picture of {} with a few {}, the number of {} is {} than that of {}.",
                       counted(na, a), pluralize(b), pluralize(a),
                       rel == CountRelation::kMore ? "more" : "fewer", pluralize(b));
  }
  PromptRecord cmp = base_record(r, Task::kNumerical, Subtype::kComparison, std::move(text), canvas);
  cmp.comparison = ComparisonLabel{a, b, rel};
  out.push_back(std::move(cmp));
  return out;
}

std::optional<PromptRecord> extract_natural_numerical(const AnnotationRecord& r,
                                                      const CanvasSpec& canvas) {
  if (filter_numerical({r}).empty()) return std::nullopt;
  const CountVector counts = box_counts(r);
  for (const auto& caption : r.captions) {
    const std::string low = lower(caption);
    bool has_number = false;
    for (int n = 1; n <= 5 && !has_number; ++n) {
      has_number = find_word(low, number_word(n)) != std::string::npos;
    }
    if (!has_number) continue;
    const bool all_named = std::all_of(counts.begin(), counts.end(), [&](const auto& kv) {
      return low.find(kv.first) != std::string::npos;
    });
    if (!all_named) continue;
    std::string text = caption;
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
      text.erase(text.begin());
    }
    return base_record(r, Task::kNumerical, Subtype::kNatural, std::move(text), canvas);
  }
  return std::nullopt;
}

std::vector<SpatialPhrase> parse_spatial_phrases(std::string_view tsv) {
  std::vector<SpatialPhrase> out;
  std::size_t start = 0;
  int lineno = 0;
  while (start < tsv.size()) {
    std::size_t end = tsv.find('\n', start);
    if (end == std::string_view::npos) end = tsv.size();
    std::string_view line = tsv.substr(start, end - start);
    start = end + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw DataError(fmt::format("spatial phrases line {}: expected phrase<TAB>relation", lineno));
    }
    try {
      out.push_back({lower(line.substr(0, tab)), spatial_relation_from_string(line.substr(tab + 1))});
    } catch (const std::invalid_argument& e) {
      throw DataError(fmt::format("spatial phrases line {}: {}", lineno, e.what()));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.phrase.size() > b.phrase.size();
  });
  return out;
}

std::vector<SpatialPhrase> default_spatial_phrases() {
  auto tsv = detail::embedded_file("spatial_phrases.tsv");
  if (!tsv) throw std::logic_error("missing built-in spatial phrase table");
  return parse_spatial_phrases(*tsv);
}

namespace {

// Two crowd-free boxes of different categories.
bool spatial_candidate(const AnnotationRecord& r) {
  return r.boxes.size() == 2 && !has_crowd(r) &&
         normalize_category(r.boxes[0].category) != normalize_category(r.boxes[1].category);
}

std::string spatial_text(SpatialRelation rel, const std::string& subject,
                         const std::string& reference) {
  const std::string head = capitalize(article(subject));
  switch (rel) {
    case SpatialRelation::kLeft:
    case SpatialRelation::kRight:
      return fmt::format("{} {} to the {} of {} {}.", head, subject, to_string(rel),
                         article(reference), reference);
    case SpatialRelation::kAbove:
    case SpatialRelation::kBelow:
      break;
  }
  return fmt::format("{} {} {} {} {}.", head, subject, to_string(rel), article(reference),
                     reference);
}

}  // namespace

std::optional<PromptRecord> make_spatial_template(const AnnotationRecord& r,
                                                  const CanvasSpec& canvas) {
  if (!spatial_candidate(r)) return std::nullopt;
  const Layout l = rescale_boxes(r, canvas, "");
  const auto& a = std::get<Element2D>(l.elements[0]);
  const auto& b = std::get<Element2D>(l.elements[1]);
  const auto rel = classify_relation(a, b);
  if (!rel) return std::nullopt;
  PromptRecord p = base_record(r, Task::kSpatial, Subtype::kTwoCategories,
                               spatial_text(*rel, b.category, a.category), canvas);
  p.gt_relation = SpatialLabel{*rel, a.category, b.category};
  return p;
}

std::optional<PromptRecord> make_spatial_natural(const AnnotationRecord& r,
                                                 const std::vector<SpatialPhrase>& phrases,
                                                 const CanvasSpec& canvas) {
  if (!spatial_candidate(r)) return std::nullopt;
  const Layout l = rescale_boxes(r, canvas, "");
  const auto& e0 = std::get<Element2D>(l.elements[0]);
  const auto& e1 = std::get<Element2D>(l.elements[1]);
  for (const auto& caption : r.captions) {
    const std::string low = lower(caption);
    for (const auto& ph : phrases) {
      const std::size_t pos = find_word(low, ph.phrase);
      if (pos == std::string::npos) continue;
      const std::string_view before = std::string_view(low).substr(0, pos);
      const std::string_view after = std::string_view(low).substr(pos + ph.phrase.size());
      auto named = [](std::string_view s, const std::string& cat) {
        return s.find(cat) != std::string_view::npos;
      };
      const bool fwd = named(before, e0.category) && named(after, e1.category);
      const bool rev = named(before, e1.category) && named(after, e0.category);
      if (fwd == rev) break;  // neither or ambiguous; the longest phrase decides
      const Element2D& subject = fwd ? e0 : e1;
      const Element2D& reference = fwd ? e1 : e0;
      const auto rel = classify_relation(reference, subject);
      if (!rel || *rel != ph.relation) break;
      std::string text = caption;
      while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
      PromptRecord p = base_record(r, Task::kSpatial, Subtype::kNatural, std::move(text), canvas);
      p.gt_relation = SpatialLabel{*rel, reference.category, subject.category};
      return p;
    }
  }
  return std::nullopt;
}

// ---- splits --------------------------------------------------------------

std::map<std::string, std::size_t> BenchConfig::default_test_caps() {
  return {{split_key(Task::kNumerical, Subtype::kSingleCategory), 114},
          {split_key(Task::kNumerical, Subtype::kTwoCategories), 197},
          {split_key(Task::kNumerical, Subtype::kComparison), 100},
          {split_key(Task::kNumerical, Subtype::kNatural), 351},
          {split_key(Task::kSpatial, Subtype::kTwoCategories), 199},
          {split_key(Task::kSpatial, Subtype::kNatural), 84}};
}

std::string split_key(Task task, Subtype subtype) {
  return fmt::format("{}/{}", to_string(task), to_string(subtype));
}

std::size_t BenchSplit::total() const {
  std::size_t n = 0;
  for (const auto& [k, v] : by_subtype) n += v.size();
  return n;
}

BenchSplit build_candidates(const std::vector<AnnotationRecord>& records, const BenchConfig& cfg) {
  BenchSplit out;
  for (const auto& [key, cap] : BenchConfig::default_test_caps()) out.by_subtype[key];
  for (const auto& r : records) {
    if (!filter_numerical({r}).empty()) {
      for (auto& p : make_template_prompts(r, cfg.canvas)) {
        out.by_subtype[split_key(p.task, p.subtype)].push_back(std::move(p));
      }
      if (auto p = extract_natural_numerical(r, cfg.canvas)) {
        out.by_subtype[split_key(p->task, p->subtype)].push_back(std::move(*p));
      }
    }
    if (auto p = make_spatial_template(r, cfg.canvas)) {
      out.by_subtype[split_key(p->task, p->subtype)].push_back(std::move(*p));
    }
    if (auto p = make_spatial_natural(r, cfg.phrases, cfg.canvas)) {
      out.by_subtype[split_key(p->task, p->subtype)].push_back(std::move(*p));
    }
  }
  return out;
}

BenchSplit sample_split(const BenchSplit& candidates, const BenchConfig& cfg) {
  BenchSplit out;
  for (const auto& [key, recs] : candidates.by_subtype) {
    auto it = cfg.test_caps.find(key);
    const std::size_t cap = it == cfg.test_caps.end() ? 0 : it->second;
    if (cap == 0 || recs.size() <= cap) {
      out.by_subtype[key] = recs;
      continue;
    }
    std::mt19937_64 rng(mix64(cfg.seed ^ fnv1a64(key)));
    std::vector<std::size_t> idx(recs.size());
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < cap; ++i) {
      const std::uint64_t n = idx.size() - i;
      const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
      std::uint64_t x = 0;
      do {
        x = rng();
      } while (x >= limit);
      std::swap(idx[i], idx[i + x % n]);
    }
    idx.resize(cap);
    std::sort(idx.begin(), idx.end());
    auto& dst = out.by_subtype[key];
    for (std::size_t i : idx) dst.push_back(recs[i]);
  }
  return out;
}

std::vector<std::string> self_consistency_violations(const PromptRecord& r) {
  std::vector<std::string> out;
  if (count_categories(r.gt_layout) != r.gt_counts) {
    out.push_back(fmt::format("{}: layout counts differ from gt_counts", r.id));
  }
  if (r.comparison) {
    CountVector counts = count_categories(r.gt_layout);
    if (comparison_accuracy(r.comparison->relation, counts, r.comparison->cat_a,
                            r.comparison->cat_b) != 1) {
      out.push_back(fmt::format("{}: layout counts contradict the comparison", r.id));
    }
  }
  if (r.task == Task::kSpatial) {
    if (!r.gt_relation) {
      out.push_back(fmt::format("{}: spatial record without a relation", r.id));
    } else {
      const Element2D* a = find_first(r.gt_layout, r.gt_relation->cat_a);
      const Element2D* b = find_first(r.gt_layout, r.gt_relation->cat_b);
      const auto rel = a && b ? classify_relation(*a, *b) : std::nullopt;
      if (!rel || *rel != r.gt_relation->relation) {
        out.push_back(fmt::format("{}: layout does not reproduce relation {}", r.id,
                                  to_string(r.gt_relation->relation)));
      }
    }
  }
  return out;
}

}  // namespace layoutplan
