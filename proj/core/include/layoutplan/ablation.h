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


#ifndef LAYOUTPLAN_ABLATION_H_
#define LAYOUTPLAN_ABLATION_H_

#include <optional>
#include <string>
#include <vector>

#include "layoutplan/pipeline.h"

namespace layoutplan {

struct AblationVariant {
  bool instruction = true;
  bool css = true;
  bool normalization = true;
  int k = 8;

  std::string label() const;  // e.g. "+instr -css +norm k=8"
  bool operator==(const AblationVariant&) const = default;
};

struct AblationGrid {
  // Exemplar counts for the extra rows run with every component on.
  std::vector<int> k_sweep = {4, 8, 16};

  /// The eight on/off combinations of the three prompt components, all-on
  /// first, each at `k`.
  static std::vector<AblationVariant> flag_variants(int k);

  /// flag_variants(base_k) followed by one all-on row per sweep entry.
  std::vector<AblationVariant> variants(int base_k) const;
};

struct AblationRow {
  AblationVariant variant;
  std::optional<EvalReport> report;
  std::vector<PredictionRecord> predictions;
  std::string error;  // set when the variant failed; other rows still run
};

struct AblationOptions {
  bool parallel_variants = false;
};

/// Plans and scores every variant against the same bench, support set and
/// backend. Variants share one retrieval cache, so exemplar choice is
/// computed once per condition and k.
std::vector<AblationRow> run_grid(const std::vector<BenchItem>& bench, const SupportSet& support,
                                  Backend& backend, const RunConfig& base,
                                  const AblationGrid& grid, const AblationOptions& opts = {},
                                  RetrievalCache* cache = nullptr);

std::string ablation_csv(const std::vector<AblationRow>& rows);
std::string ablation_markdown(const std::vector<AblationRow>& rows);

}  // namespace layoutplan

#endif  // LAYOUTPLAN_ABLATION_H_
