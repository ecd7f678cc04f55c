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

#include "layoutplan/eval_2d.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace layoutplan {

CountVector count_categories(const Layout& layout) {
  CountVector out;
  for (const auto& el : layout.elements) ++out[normalize_category(category_of(el))];
  return out;
}

CountMetrics count_metrics(const CountVector& gt, const CountVector& pred) {
  long long hit = 0, n_gt = 0, n_pred = 0;
  for (const auto& [cat, n] : gt) {
    n_gt += n;
    auto it = pred.find(cat);
    if (it != pred.end()) hit += std::min(n, it->second);
  }
  for (const auto& [cat, n] : pred) n_pred += n;
  CountMetrics m;
  if (n_pred == 0) {
    m.precision_undefined = true;
  } else {
    m.precision = static_cast<double>(hit) / static_cast<double>(n_pred);
  }
  if (n_gt == 0) {
    m.recall_undefined = true;
  } else {
    m.recall = static_cast<double>(hit) / static_cast<double>(n_gt);
  }
  m.accuracy = gt == pred ? 1.0 : 0.0;
  return m;
}

std::string_view to_string(CountRelation r) {
  switch (r) {
    case CountRelation::kFewer:
      return "fewer";
    case CountRelation::kEqual:
      return "equal";
    case CountRelation::kMore:
      return "more";
  }
  return "equal";
}

CountRelation count_relation_from_string(std::string_view s) {
  if (s == "fewer") return CountRelation::kFewer;
  if (s == "equal") return CountRelation::kEqual;
  if (s == "more") return CountRelation::kMore;
  throw std::invalid_argument(fmt::format("unknown count relation '{}'", s));
}

int comparison_accuracy(CountRelation gt, const CountVector& pred, const std::string& cat_a,
                        const std::string& cat_b) {
  if (cat_a == cat_b) throw std::invalid_argument("comparison needs two distinct categories");
  auto count = [&](const std::string& c) {
    auto it = pred.find(c);
    return it == pred.end() ? 0 : it->second;
  };
  const int a = count(cat_a);
  const int b = count(cat_b);
  const CountRelation got = a < b ? CountRelation::kFewer
                                  : (a == b ? CountRelation::kEqual : CountRelation::kMore);
  return got == gt ? 1 : 0;
}

std::string_view to_string(SpatialRelation r) {
  switch (r) {
    case SpatialRelation::kLeft:
      return "left";
    case SpatialRelation::kRight:
      return "right";
    case SpatialRelation::kAbove:
      return "above";
    case SpatialRelation::kBelow:
      return "below";
  }
  return "left";
}

SpatialRelation spatial_relation_from_string(std::string_view s) {
  if (s == "left") return SpatialRelation::kLeft;
  if (s == "right") return SpatialRelation::kRight;
  if (s == "above") return SpatialRelation::kAbove;
  if (s == "below") return SpatialRelation::kBelow;
  throw std::invalid_argument(fmt::format("unknown spatial relation '{}'", s));
}

std::optional<SpatialRelation> classify_centers(double ax, double ay, double bx, double by) {
  const double dx = bx - ax;
  const double dy = ay - by;  // positive when b is visually higher
  if (dx == 0 && dy == 0) return std::nullopt;
  if (!std::isfinite(dx) || !std::isfinite(dy)) return std::nullopt;
  // Comparing against |dx| and |dy| is the sector test on dy/d and dx/d
  // without the rounding of sin(pi/4).
  if (dy >= std::abs(dx)) return SpatialRelation::kAbove;
  if (-dy >= std::abs(dx)) return SpatialRelation::kBelow;
  return dx < 0 ? SpatialRelation::kLeft : SpatialRelation::kRight;
}

std::optional<SpatialRelation> classify_relation(const Element2D& a, const Element2D& b) {
  return classify_centers(a.center_x(), a.center_y(), b.center_x(), b.center_y());
}

const Element2D* find_first(const Layout& layout, std::string_view category) {
  const std::string want = normalize_category(category);
  for (const auto& el : layout.elements) {
    const auto* e = std::get_if<Element2D>(&el);
    if (e != nullptr && normalize_category(e->category) == want) return e;
  }
  return nullptr;
}

int spatial_score(const SpatialSample& s) {
  if (!s.prediction) return 0;
  const Element2D* a = find_first(*s.prediction, s.cat_a);
  const Element2D* b = find_first(*s.prediction, s.cat_b);
  if (a == nullptr || b == nullptr) return 0;
  const auto rel = classify_relation(*a, *b);
  return rel && *rel == s.gt ? 1 : 0;
}

double spatial_accuracy(std::span<const SpatialSample> samples) {
  if (samples.empty()) return 0.0;
  std::size_t ok = 0;
  for (const auto& s : samples) ok += static_cast<std::size_t>(spatial_score(s));
  return 100.0 * static_cast<double>(ok) / static_cast<double>(samples.size());
}

NumericalSummary summarize_numerical(std::span<const NumericalSample> samples,
                                     const std::set<std::string>& vocabulary) {
  NumericalSummary out;
  out.samples = samples.size();
  if (samples.empty()) return out;
  double p = 0, r = 0, a = 0;
  for (const auto& s : samples) {
    if (!s.prediction) {
      ++out.parse_failures;
      continue;
    }
    const CountMetrics m = count_metrics(s.gt, *s.prediction);
    if (m.precision_undefined) ++out.empty_predictions;
    p += m.precision;
    r += m.recall;
    a += s.comparison ? comparison_accuracy(s.comparison->relation, *s.prediction,
                                            s.comparison->cat_a, s.comparison->cat_b)
                      : m.accuracy;
    if (!vocabulary.empty()) {
      for (const auto& [cat, n] : *s.prediction) {
        if (vocabulary.count(cat) == 0) out.out_of_vocabulary += static_cast<std::size_t>(n);
      }
    }
  }
  const double n = static_cast<double>(samples.size());
  out.precision = 100.0 * p / n;
  out.recall = 100.0 * r / n;
  out.accuracy = 100.0 * a / n;
  return out;
}

}  // namespace layoutplan
