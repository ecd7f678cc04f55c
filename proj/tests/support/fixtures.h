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


// Synthetic data shared by unit, integration and acceptance tests.

#ifndef LAYOUTPLAN_TESTS_FIXTURES_H_
#define LAYOUTPLAN_TESTS_FIXTURES_H_

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "layoutplan/bench_builder.h"
#include "layoutplan/css_dsl.h"
#include "layoutplan/layout_io.h"
#include "layoutplan/model.h"

namespace layoutplan::testing {

// The 80 COCO detection category names.
const std::vector<std::string>& coco_categories();

// Fresh empty directory under the system temp dir.
std::filesystem::path temp_dir(std::string_view tag);

std::filesystem::path write_file(const std::filesystem::path& path, std::string_view text);

// Random layout already on the grid `spec` can express, so serializing and
// parsing it must give it back exactly.
Layout random_layout(const DialectSpec& spec, std::mt19937_64& rng);

// Canvas used by random_layout for a dialect.
CanvasSpec canvas_for(Dialect d);

// COCO-format JSON for the given records. Category ids follow
// coco_categories(); unknown names get ids after it.
std::string coco_instances_json(const std::vector<AnnotationRecord>& records);
std::string coco_captions_json(const std::vector<AnnotationRecord>& records);

// Varied records: numerical-eligible ones, two-object scenes with phrase
// captions, crowd boxes, crowded scenes and images without boxes.
std::vector<AnnotationRecord> random_annotations(std::mt19937_64& rng, int n_images);

// A benchmark whose every test condition also appears in the support pool
// with the same layout, plus a few distractors.
struct SyntheticBench {
  std::vector<PromptRecord> numerical;
  std::vector<PromptRecord> spatial;
  std::vector<LayoutRecord> support;  // numerical and spatial conditions
  int jitter_px = 0;
  // Spatial records whose relation margin exceeds 6 * jitter, the most a
  // jitter of that size can move it. Their samples stay correct, so
  // 100 * robust / spatial.size() bounds spatial accuracy from below.
  std::size_t robust_spatial = 0;
  double spatial_accuracy_floor = 0;
  // Jitter moves boxes but never adds or drops one, so counts are intact.
  double numerical_precision_floor = 100;
  double numerical_recall_floor = 100;
};

// Margin of a relation: how far the center offset is from the nearest
// sector boundary, in pixels.
double relation_margin(const Element2D& reference, const Element2D& subject);

// 30 numerical and 20 spatial records. Captions are checked to embed
// distinctly under the hashed bag-of-words embedder.
SyntheticBench make_synthetic_bench(std::uint64_t seed, int jitter_px);

}  // namespace layoutplan::testing

#endif  // LAYOUTPLAN_TESTS_FIXTURES_H_
