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

// Numerical and spatial prompt records built from COCO-format annotations.

#ifndef LAYOUTPLAN_BENCH_BUILDER_H_
#define LAYOUTPLAN_BENCH_BUILDER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "layoutplan/eval_2d.h"
#include "layoutplan/model.h"

namespace layoutplan {

struct AnnotationBox {
  std::string category;
  double left = 0;  // source image pixels
  double top = 0;
  double width = 0;
  double height = 0;
  bool crowd = false;
};

struct AnnotationRecord {
  std::int64_t image_id = 0;
  int image_width = 0;
  int image_height = 0;
  std::vector<std::string> captions;
  std::vector<AnnotationBox> boxes;
};

/// Reads COCO instances JSON and, optionally, the matching captions JSON.
/// Records come back sorted by image id; images without boxes are kept.
/// Throws DataError naming the file and byte offset on malformed input.
std::vector<AnnotationRecord> load_coco(const std::filesystem::path& instances,
                                        const std::optional<std::filesystem::path>& captions);

enum class Subtype { kSingleCategory, kTwoCategories, kComparison, kNatural };

std::string_view to_string(Subtype s);
Subtype subtype_from_string(std::string_view s);  // throws std::invalid_argument

struct ComparisonLabel {
  std::string cat_a;  // the category whose count is stated
  std::string cat_b;
  CountRelation relation = CountRelation::kEqual;  // count(a) versus count(b)
};

struct SpatialLabel {
  SpatialRelation relation = SpatialRelation::kLeft;  // of cat_b relative to cat_a
  std::string cat_a;
  std::string cat_b;
};

struct PromptRecord {
  std::string id;
  Task task = Task::kNumerical;
  Subtype subtype = Subtype::kSingleCategory;
  std::string text;
  Layout gt_layout;
  CountVector gt_counts;
  std::optional<ComparisonLabel> comparison;
  std::optional<SpatialLabel> gt_relation;
  std::int64_t source_image_id = 0;
};

std::string to_json_line(const PromptRecord& r);
PromptRecord prompt_record_from_json(std::string_view line);  // throws DataError
std::vector<PromptRecord> read_prompt_records(const std::filesystem::path& path);
void write_prompt_records(const std::filesystem::path& path,
                          const std::vector<PromptRecord>& records);

/// "one" ... "five"; throws std::invalid_argument outside [1, 5].
std::string_view number_word(int n);

/// English plural of a category name ("giraffe" -> "giraffes",
/// "person" -> "people", "bus" -> "buses").
std::string pluralize(std::string_view noun);

/// "a" or "an" by the first letter.
std::string_view article(std::string_view noun);

/// Non-crowd box counts per normalized category.
CountVector box_counts(const AnnotationRecord& r);

/// Boxes rescaled onto `canvas` and rounded to whole pixels, in annotation
/// order. Crowd boxes are left out.
Layout rescale_boxes(const AnnotationRecord& r, const CanvasSpec& canvas, std::string caption);

/// Keeps crowd-free records with at most two categories and each count in [1, 5].
std::vector<AnnotationRecord> filter_numerical(const std::vector<AnnotationRecord>& records);

/// Single-category, two-category and comparison prompts for a record that
/// passed filter_numerical.
std::vector<PromptRecord> make_template_prompts(const AnnotationRecord& r,
                                                const CanvasSpec& canvas = {});

/// First caption naming a count from one to five whose text mentions every
/// annotated category. Records failing filter_numerical yield nothing.
std::optional<PromptRecord> extract_natural_numerical(const AnnotationRecord& r,
                                                      const CanvasSpec& canvas = {});

struct SpatialPhrase {
  std::string phrase;
  SpatialRelation relation;
};

/// The built-in key phrase table (data/spatial_phrases.tsv).
std::vector<SpatialPhrase> default_spatial_phrases();
/// Parses "phrase<TAB>relation" lines; '#' starts a comment. Throws DataError.
std::vector<SpatialPhrase> parse_spatial_phrases(std::string_view tsv);

/// Template prompt for a record with exactly two non-crowd boxes of different
/// categories: "A <second> to the right of a <first>." and so on.
std::optional<PromptRecord> make_spatial_template(const AnnotationRecord& r,
                                                  const CanvasSpec& canvas = {});

/// Natural prompt from a caption holding a key phrase, with one box category
/// named before the phrase and the other after it, whose boxes agree with
/// the phrase's relation.
std::optional<PromptRecord> make_spatial_natural(const AnnotationRecord& r,
                                                 const std::vector<SpatialPhrase>& phrases,
                                                 const CanvasSpec& canvas = {});

struct BenchConfig {
  std::uint64_t seed = 0;
  CanvasSpec canvas;
  std::vector<SpatialPhrase> phrases = default_spatial_phrases();
  // Test split size per (task, subtype); missing or 0 keeps every candidate.
  std::map<std::string, std::size_t> test_caps = default_test_caps();

  // 114 / 197 / 100 / 351 numerical and 199 / 84 spatial.
  static std::map<std::string, std::size_t> default_test_caps();
};

// "numerical/single_category" style key.
std::string split_key(Task task, Subtype subtype);

struct BenchSplit {
  // Keyed by split_key; every key of a built split is present, possibly empty.
  std::map<std::string, std::vector<PromptRecord>> by_subtype;
  std::size_t total() const;
};

/// All candidates of each subtype, in image order.
BenchSplit build_candidates(const std::vector<AnnotationRecord>& records,
                            const BenchConfig& cfg);

/// Seeded sample of each subtype down to its cap, kept in image order.
BenchSplit sample_split(const BenchSplit& candidates, const BenchConfig& cfg);

/// Checks that a record's layout reproduces its own labels. Returns a
/// description of each mismatch; empty when consistent.
std::vector<std::string> self_consistency_violations(const PromptRecord& r);

}  // namespace layoutplan

#endif  // LAYOUTPLAN_BENCH_BUILDER_H_
