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

#ifndef LAYOUTPLAN_EVAL_3D_H_
#define LAYOUTPLAN_EVAL_3D_H_

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "layoutplan/eval_2d.h"
#include "layoutplan/model.h"

namespace layoutplan {

// Rectangular floor spanning [-length/2, length/2] x [-width/2, width/2]
// around the room center, in the same unit as the scene it is tested against.
struct FloorPlan {
  double length = 0;
  double width = 0;

  void validate() const;  // throws std::invalid_argument

  // Room dimensions of a room condition, in meters or in canvas pixels.
  static FloorPlan meters(const ConditionText& room);
  static FloorPlan pixels(const ConditionText& room, const CanvasSpec& canvas);
};

struct OutOfBoundResult {
  std::vector<bool> element_violates;
  bool scene_violates = false;
};

/// Tests each element's rotated footprint corners against the floor plan
/// grown by `epsilon` on every side. The boundary itself is inside. Throws
/// std::invalid_argument unless `scene` is scene3d.
OutOfBoundResult out_of_bound(const Layout& scene, const FloorPlan& plan, double epsilon = 0);

/// 100 x violating / total. Throws std::invalid_argument for an empty list.
double oob_rate(std::span<const bool> scene_violates);

class CategoryDistribution {
 public:
  // Probabilities must be >= 0, sum to 1 within 1e-9 and name only support
  // categories; absent support categories have probability 0.
  CategoryDistribution(std::vector<std::string> support, std::map<std::string, double> probs);

  /// Normalized counts over `support`; counts outside the support are
  /// ignored. Throws std::invalid_argument when nothing is counted.
  static CategoryDistribution from_counts(std::vector<std::string> support,
                                          const CountVector& counts);

  const std::vector<std::string>& support() const { return support_; }
  double probability(const std::string& category) const;

 private:
  std::vector<std::string> support_;
  std::map<std::string, double> probs_;
};

/// KL(gt || pred) in nats after smoothing both sides with
/// p' = (p + s) / (1 + s * |V|). Throws std::invalid_argument when the
/// supports differ or smoothing is negative.
double kl_divergence(const CategoryDistribution& gt, const CategoryDistribution& pred,
                     double smoothing = 1e-6);

/// Sum over generated elements of the smallest L1 pose-plus-size distance to
/// an exemplar element of the same category; an unmatched category is
/// compared against the zero pose and size. Geometry should be in meters.
/// Not symmetric: argument order matters.
double scene_difference(const Layout& generated, const Layout& exemplar);

enum class GenerationClass { kDuplication, kModification, kGeneration };

std::string_view to_string(GenerationClass c);

/// Below 1.0: duplication; below 6.0: modification; otherwise generation.
/// Throws std::invalid_argument for negative input.
GenerationClass classify_generation(double min_diff);

struct DuplicationHistogram {
  std::array<std::size_t, 3> counts{};  // indexed by GenerationClass
  std::vector<double> sorted_differences;
};

DuplicationHistogram duplication_histogram(std::span<const double> min_diffs);

}  // namespace layoutplan

#endif  // LAYOUTPLAN_EVAL_3D_H_
