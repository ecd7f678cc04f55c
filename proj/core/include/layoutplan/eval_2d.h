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

#ifndef LAYOUTPLAN_EVAL_2D_H_
#define LAYOUTPLAN_EVAL_2D_H_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>

#include "layoutplan/model.h"

namespace layoutplan {

// Category -> count. Zero counts are never stored.
using CountVector = std::map<std::string, int>;

/// Counts elements per normalized category. Keypoint sets count as "person".
CountVector count_categories(const Layout& layout);

struct CountMetrics {
  double precision = 0;
  double recall = 0;
  double accuracy = 0;
  // Set when the denominator was zero; the metric is then reported as 0.
  bool precision_undefined = false;
  bool recall_undefined = false;
};

/// precision = sum_c min(gt_c, pred_c) / sum_c pred_c,
/// recall    = sum_c min(gt_c, pred_c) / sum_c gt_c,
/// accuracy  = 1 when the vectors are identical.
CountMetrics count_metrics(const CountVector& gt, const CountVector& pred);

enum class CountRelation { kFewer, kEqual, kMore };

std::string_view to_string(CountRelation r);
CountRelation count_relation_from_string(std::string_view s);  // throws std::invalid_argument

/// 1 when sign(pred[cat_a] - pred[cat_b]) agrees with `gt`, else 0. Throws
/// std::invalid_argument when the categories are equal.
int comparison_accuracy(CountRelation gt, const CountVector& pred, const std::string& cat_a,
                        const std::string& cat_b);

enum class SpatialRelation { kLeft, kRight, kAbove, kBelow };

std::string_view to_string(SpatialRelation r);
SpatialRelation spatial_relation_from_string(std::string_view s);  // throws std::invalid_argument

/// Where the center of `b` lies relative to the center of `a`, in image
/// coordinates with y down. With dx = x_b - x_a and dy = y_a - y_b:
/// above when dy >= |dx|, below when -dy >= |dx|, otherwise left or right by
/// the sign of dx. The 45-degree diagonals therefore count as above/below.
/// Identical centers give nullopt.
std::optional<SpatialRelation> classify_relation(const Element2D& a, const Element2D& b);
std::optional<SpatialRelation> classify_centers(double ax, double ay, double bx, double by);

/// First element of `category` (after normalization), or nullptr.
const Element2D* find_first(const Layout& layout, std::string_view category);

struct SpatialSample {
  SpatialRelation gt = SpatialRelation::kLeft;
  // nullopt when the completion did not parse.
  std::optional<Layout> prediction;
  std::string cat_a;  // reference object
  std::string cat_b;  // object whose position is described
};

/// 1 when both categories are present and classify_relation(first cat_a,
/// first cat_b) equals the ground truth; 0 otherwise, parse failures included.
int spatial_score(const SpatialSample& s);

/// Mean spatial_score x 100; 0 for an empty list.
double spatial_accuracy(std::span<const SpatialSample> samples);

struct NumericalSample {
  CountVector gt;
  std::optional<CountVector> prediction;  // nullopt: parse failure
  // Comparison prompts score accuracy on the relation between two categories.
  struct Comparison {
    std::string cat_a;
    std::string cat_b;
    CountRelation relation = CountRelation::kEqual;
  };
  std::optional<Comparison> comparison;
};

// Means over samples, as percentages.
struct NumericalSummary {
  std::size_t samples = 0;
  std::size_t parse_failures = 0;
  std::size_t empty_predictions = 0;  // precision undefined
  // Predicted elements whose category never occurs in the ground truth
  // vocabulary handed to summarize_numerical.
  std::size_t out_of_vocabulary = 0;
  double precision = 0;
  double recall = 0;
  double accuracy = 0;
};

NumericalSummary summarize_numerical(std::span<const NumericalSample> samples,
                                     const std::set<std::string>& vocabulary = {});

}  // namespace layoutplan

#endif  // LAYOUTPLAN_EVAL_2D_H_
