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

#include "layoutplan/eval_3d.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

namespace layoutplan {

void FloorPlan::validate() const {
  if (!(length > 0) || !(width > 0)) {
    throw std::invalid_argument(fmt::format("floor plan must be positive, got {} x {}", length, width));
  }
}

FloorPlan FloorPlan::meters(const ConditionText& room) {
  if (room.kind != ConditionKind::kRoomSpec) {
    throw std::invalid_argument("floor plan needs a room condition");
  }
  room.validate();
  return {*room.room_length_m, *room.room_width_m};
}

FloorPlan FloorPlan::pixels(const ConditionText& room, const CanvasSpec& canvas) {
  FloorPlan m = meters(room);
  const int extent = canvas.max_extent_px();
  return {normalize(m.length, canvas.meters_per_canvas, extent),
          normalize(m.width, canvas.meters_per_canvas, extent)};
}

OutOfBoundResult out_of_bound(const Layout& scene, const FloorPlan& plan, double epsilon) {
  if (scene.dialect != Dialect::kScene3d) {
    throw std::invalid_argument("out-of-bound test needs a scene3d layout");
  }
  plan.validate();
  const double hx = plan.length / 2 + epsilon;
  const double hy = plan.width / 2 + epsilon;
  // Absorbs rounding in the corner rotation.
  const double tol = 1e-9 * std::max({1.0, plan.length, plan.width});
  OutOfBoundResult r;
  r.element_violates.reserve(scene.elements.size());
  for (const auto& el : scene.elements) {
    bool bad = false;
    for (const auto& p : footprint_corners(std::get<Element3D>(el))) {
      if (std::abs(p.x) > hx + tol || std::abs(p.y) > hy + tol) bad = true;
    }
    r.element_violates.push_back(bad);
    r.scene_violates = r.scene_violates || bad;
  }
  return r;
}

double oob_rate(std::span<const bool> scene_violates) {
  if (scene_violates.empty()) throw std::invalid_argument("out-of-bound rate of no scenes");
  const auto n = std::count(scene_violates.begin(), scene_violates.end(), true);
  return 100.0 * static_cast<double>(n) / static_cast<double>(scene_violates.size());
}

CategoryDistribution::CategoryDistribution(std::vector<std::string> support,
                                           std::map<std::string, double> probs)
    : support_(std::move(support)), probs_(std::move(probs)) {
  if (support_.empty()) throw std::invalid_argument("distribution support is empty");
  std::vector<std::string> sorted = support_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("distribution support has duplicates");
  }
  double sum = 0;
  for (const auto& [cat, p] : probs_) {
    if (!std::binary_search(sorted.begin(), sorted.end(), cat)) {
      throw std::invalid_argument(fmt::format("'{}' is outside the support", cat));
    }
    if (!(p >= 0)) throw std::invalid_argument(fmt::format("negative probability for '{}'", cat));
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument(fmt::format("probabilities sum to {}", sum));
  }
}

CategoryDistribution CategoryDistribution::from_counts(std::vector<std::string> support,
                                                       const CountVector& counts) {
  long long total = 0;
  for (const auto& c : support) {
    auto it = counts.find(c);
    if (it != counts.end()) total += it->second;
  }
  if (total == 0) throw std::invalid_argument("no counts inside the distribution support");
  std::map<std::string, double> probs;
  for (const auto& c : support) {
    auto it = counts.find(c);
    if (it != counts.end() && it->second > 0) {
      probs[c] = static_cast<double>(it->second) / static_cast<double>(total);
    }
  }
  return CategoryDistribution(std::move(support), std::move(probs));
}

double CategoryDistribution::probability(const std::string& category) const {
  auto it = probs_.find(category);
  return it == probs_.end() ? 0.0 : it->second;
}

double kl_divergence(const CategoryDistribution& gt, const CategoryDistribution& pred,
                     double smoothing) {
  if (smoothing < 0) throw std::invalid_argument("smoothing must be >= 0");
  std::vector<std::string> a = gt.support();
  std::vector<std::string> b = pred.support();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) throw std::invalid_argument("KL divergence over different supports");
  const double denom = 1.0 + smoothing * static_cast<double>(a.size());
  double kl = 0;
  for (const auto& c : a) {
    const double p = (gt.probability(c) + smoothing) / denom;
    const double q = (pred.probability(c) + smoothing) / denom;
    if (p == 0) continue;
    if (q == 0) return std::numeric_limits<double>::infinity();
    kl += p * std::log(p / q);
  }
  return std::max(0.0, kl);
}

namespace {

double pose_size_l1(const Element3D& a, const Element3D& b) {
  return std::abs(a.left - b.left) + std::abs(a.top - b.top) + std::abs(a.depth - b.depth) +
         std::abs(a.length - b.length) + std::abs(a.width - b.width) +
         std::abs(a.height - b.height);
}

}  // namespace

double scene_difference(const Layout& generated, const Layout& exemplar) {
  if (generated.dialect != Dialect::kScene3d || exemplar.dialect != Dialect::kScene3d) {
    throw std::invalid_argument("scene difference needs scene3d layouts");
  }
  double total = 0;
  for (const auto& gel : generated.elements) {
    const auto& g = std::get<Element3D>(gel);
    const std::string cat = normalize_category(g.category);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& xel : exemplar.elements) {
      const auto& x = std::get<Element3D>(xel);
      if (normalize_category(x.category) == cat) best = std::min(best, pose_size_l1(g, x));
    }
    if (std::isinf(best)) {
      Element3D zero;
      best = pose_size_l1(g, zero);
    }
    total += best;
  }
  return total;
}

std::string_view to_string(GenerationClass c) {
  switch (c) {
    case GenerationClass::kDuplication:
      return "duplication";
    case GenerationClass::kModification:
      return "modification";
    case GenerationClass::kGeneration:
      return "generation";
  }
  return "generation";
}

GenerationClass classify_generation(double min_diff) {
  if (!(min_diff >= 0)) throw std::invalid_argument("scene difference must be >= 0");
  if (min_diff < 1.0) return GenerationClass::kDuplication;
  if (min_diff < 6.0) return GenerationClass::kModification;
  return GenerationClass::kGeneration;
}

DuplicationHistogram duplication_histogram(std::span<const double> min_diffs) {
  DuplicationHistogram h;
  h.sorted_differences.assign(min_diffs.begin(), min_diffs.end());
  std::sort(h.sorted_differences.begin(), h.sorted_differences.end());
  for (double d : h.sorted_differences) ++h.counts[static_cast<std::size_t>(classify_generation(d))];
  return h;
}

}  // namespace layoutplan
