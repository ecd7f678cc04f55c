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


#include "layoutplan/ablation.h"

#include <exception>
#include <thread>

#include <fmt/format.h>

namespace layoutplan {

std::string AblationVariant::label() const {
  auto sign = [](bool on) { return on ? '+' : '-'; };
  return fmt::format("{}instr {}css {}norm k={}", sign(instruction), sign(css),
                     sign(normalization), k);
}

std::vector<AblationVariant> AblationGrid::flag_variants(int k) {
  std::vector<AblationVariant> out;
  for (int bits = 0; bits < 8; ++bits) {
    out.push_back({(bits & 4) == 0, (bits & 2) == 0, (bits & 1) == 0, k});
  }
  return out;
}

std::vector<AblationVariant> AblationGrid::variants(int base_k) const {
  auto out = flag_variants(base_k);
  for (int k : k_sweep) out.push_back({true, true, true, k});
  return out;
}

namespace {

AblationRow run_variant(const AblationVariant& v, const std::vector<BenchItem>& bench,
                        const SupportSet& support, Backend& backend, const RunConfig& base,
                        RetrievalCache* cache, const EmbeddingProvider* embedder) {
  AblationRow row;
  row.variant = v;
  try {
    RunConfig cfg = base;
    cfg.include_instruction = v.instruction;
    cfg.style.use_css = v.css;
    cfg.style.use_normalized_ints = v.normalization;
    cfg.selection.k = v.k;
    PlanOptions po;
    po.cache = cache;
    po.embedder = embedder;
    PlanResult plan = run_plan(bench, support, backend, cfg, po);
    if (plan.fatal_error) {
      row.error = *plan.fatal_error;
      row.predictions = std::move(plan.predictions);
      return row;
    }
    EvalOptions eo;
    eo.support = &support;
    row.report = evaluate(plan.predictions, bench, cfg.task, eo);
    row.predictions = std::move(plan.predictions);
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

std::vector<AblationRow> run_grid(const std::vector<BenchItem>& bench, const SupportSet& support,
                                  Backend& backend, const RunConfig& base,
                                  const AblationGrid& grid, const AblationOptions& opts,
                                  RetrievalCache* cache) {
  RetrievalCache local;
  if (cache == nullptr) cache = &local;
  const auto embedder = make_embedder(base);
  const auto variants = grid.variants(base.selection.k);
  std::vector<AblationRow> rows(variants.size());
  if (opts.parallel_variants) {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < variants.size(); ++i) {
      pool.emplace_back([&, i] {
        rows[i] = run_variant(variants[i], bench, support, backend, base, cache, embedder.get());
      });
    }
  } else {
    for (std::size_t i = 0; i < variants.size(); ++i) {
      rows[i] = run_variant(variants[i], bench, support, backend, base, cache, embedder.get());
    }
  }
  return rows;
}

namespace {

std::string metric(const std::optional<double>& v) { return v ? fmt::format("{:.2f}", *v) : ""; }

struct Cells {
  std::string records, samples, pfr, precision, recall, accuracy, oob, kl;
};

Cells cells_for(const AblationRow& r) {
  Cells c;
  if (!r.report) return c;
  const auto& rep = *r.report;
  c.records = fmt::format("{}", rep.records);
  c.samples = fmt::format("{}", rep.samples);
  c.pfr = fmt::format("{:.2f}", rep.parse_failure_rate);
  c.precision = metric(rep.overall.precision);
  c.recall = metric(rep.overall.recall);
  c.accuracy = metric(rep.overall.accuracy);
  if (rep.scene) {
    c.oob = metric(rep.scene->out_of_bound_rate);
    c.kl = rep.scene->kl_divergence ? fmt::format("{:.4f}", *rep.scene->kl_divergence) : "";
  }
  return c;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string ablation_csv(const std::vector<AblationRow>& rows) {
  std::string out =
      "instruction,css,normalization,k,records,samples,parse_failure_rate,precision,recall,"
      "accuracy,out_of_bound_rate,kl_divergence,error\n";
  for (const auto& r : rows) {
    const Cells c = cells_for(r);
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.variant.instruction ? 1 : 0,
                       r.variant.css ? 1 : 0, r.variant.normalization ? 1 : 0, r.variant.k,
                       c.records, c.samples, c.pfr, c.precision, c.recall, c.accuracy, c.oob, c.kl,
                       csv_field(r.error));
  }
  return out;
}

std::string ablation_markdown(const std::vector<AblationRow>& rows) {
  std::string out =
      "| Instr. | CSS | Norm. | k | Parse fail % | Precision | Recall | Accuracy | OOB % | KL | "
      "Error |\n|:-:|:-:|:-:|--:|--:|--:|--:|--:|--:|--:|---|\n";
  auto mark = [](bool on) { return on ? "✓" : ""; };
  for (const auto& r : rows) {
    const Cells c = cells_for(r);
    std::string err = r.error;
    for (auto& ch : err) {
      if (ch == '|' || ch == '\n') ch = ' ';
    }
    out += fmt::format("| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |\n",
                       mark(r.variant.instruction), mark(r.variant.css),
                       mark(r.variant.normalization), r.variant.k, c.pfr, c.precision, c.recall,
                       c.accuracy, c.oob, c.kl, err);
  }
  return out;
}

}  // namespace layoutplan
