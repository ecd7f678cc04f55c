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


// End-to-end wiring: bench records in, predictions and reports out. Both the
// command-line tool and the ablation harness go through here.

#ifndef LAYOUTPLAN_PIPELINE_H_
#define LAYOUTPLAN_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "layoutplan/bench_builder.h"
#include "layoutplan/embedding.h"
#include "layoutplan/eval_2d.h"
#include "layoutplan/eval_3d.h"
#include "layoutplan/llm_backend.h"
#include "layoutplan/retrieval.h"

namespace layoutplan {

enum class BackendKind { kMock, kHttp };

std::string_view to_string(BackendKind k);
BackendKind backend_kind_from_string(std::string_view s);  // throws std::invalid_argument

enum class EmbedderKind { kHashedBow, kRemote };

struct RunConfig {
  Task task = Task::kSpatial;
  BackendKind backend = BackendKind::kMock;
  GenerationParams params = GenerationParams::defaults_for(Task::kSpatial);
  SelectionPolicy selection{SelectionMode::kRetrieval, 8, 0};
  StyleFlags style;
  bool include_instruction = true;
  CanvasSpec canvas = CanvasSpec::image_default();
  int jobs = 1;
  int mock_jitter_px = 0;
  EndpointConfig endpoint;
  EmbedderKind embedder = EmbedderKind::kHashedBow;
  RemoteEmbeddingConfig remote_embedding;
  std::size_t char_budget = 0;

  // Task-specific exemplar count, token budget, sample count and canvas.
  static RunConfig defaults_for(Task task);
  Dialect dialect() const;
  DialectSpec dialect_spec() const { return DialectSpec::make(dialect(), style); }
  void validate() const;  // throws std::invalid_argument
};

Dialect dialect_for(Task task);

/// JSON snapshot of every field; feeding it back through
/// run_config_from_json reproduces the config.
std::string run_config_to_json(const RunConfig& cfg);

/// Overlays the keys present in `json_text` onto `base`. Accepts a bare
/// config object or a run manifest (its "config" member is used). Throws
/// DataError on malformed JSON or unknown values.
RunConfig run_config_from_json(std::string_view json_text, RunConfig base);

// One evaluation record, from either a prompt-record or a layout-record file.
struct BenchItem {
  std::string id;
  Task task = Task::kSpatial;
  std::string subtype;  // empty for scene and keypoint records
  ConditionText condition;
  std::optional<Layout> gt_layout;
  CountVector gt_counts;
  std::optional<ComparisonLabel> comparison;
  std::optional<SpatialLabel> spatial;
};

BenchItem bench_item_from(const PromptRecord& r);
BenchItem bench_item_from(const LayoutRecord& r, Task task);

/// Reads JSON-lines bench records. Lines with a "gt_layout" key are prompt
/// records; anything else must be a layout record, tagged with `task`.
/// Throws DataError with file and line on bad input, and when ids repeat.
std::vector<BenchItem> load_bench(const std::filesystem::path& path, Task task);

/// Demonstration pool from prompt-record or layout-record JSON lines.
SupportSet load_support(const std::filesystem::path& path);

std::shared_ptr<const EmbeddingProvider> make_embedder(const RunConfig& cfg);

/// Caption supports get embeddings up front so retrieval never recomputes
/// them. Room-spec supports come back unchanged.
SupportSet prepare_support(const SupportSet& support, const EmbeddingProvider& embedder);

std::unique_ptr<Backend> make_backend(const RunConfig& cfg, const SupportSet& support,
                                      std::shared_ptr<const EmbeddingProvider> embedder,
                                      AuditLog* audit = nullptr);

/// Vocabulary for the scene instruction: the built-in bedroom table, or
/// category frequencies counted over the support layouts.
std::optional<FurnitureVocabulary> vocabulary_for(Task task, const SupportSet& support);

// ---- plan ----------------------------------------------------------------

enum class SampleStatus { kOk, kParseFailed, kBackendError };

std::string_view to_string(SampleStatus s);
SampleStatus sample_status_from_string(std::string_view s);

struct PredictionRecord {
  std::string id;
  int sample = 0;
  SampleStatus status = SampleStatus::kOk;
  std::string completion_hash;  // hex FNV-1a of the raw completion
  std::vector<std::string> exemplar_ids;
  std::vector<std::string> warnings;  // parse warning kinds
  std::size_t clamped = 0;            // boxes cut back to the canvas
  std::optional<Layout> layout;       // set when status is ok
  std::string error;
};

std::string to_json_line(const PredictionRecord& p);
PredictionRecord prediction_from_json(std::string_view line);
std::vector<PredictionRecord> read_predictions(const std::filesystem::path& path);
void write_predictions(const std::filesystem::path& path,
                       const std::vector<PredictionRecord>& predictions);

struct PlanOptions {
  RetrievalCache* cache = nullptr;
  // Query embedder for caption retrieval; a hashed bag of words when null.
  const EmbeddingProvider* embedder = nullptr;
  // Scene completion: partial layouts keyed by bench id.
  const std::map<std::string, Layout>* prefixes = nullptr;
};

struct PlanResult {
  std::vector<PredictionRecord> predictions;  // bench order, samples in order
  std::size_t records_done = 0;
  // Set when an authentication or configuration error stopped the run. The
  // predictions then hold every record finished before the stop.
  std::optional<std::string> fatal_error;
  double elapsed_ms = 0;
};

/// retrieve -> build -> complete -> parse -> clamp for every bench item, up
/// to cfg.jobs at a time. Output order follows the bench. Transient backend
/// failures mark that record's samples as backend errors and the run goes
/// on.
PlanResult run_plan(const std::vector<BenchItem>& bench, const SupportSet& support,
                    Backend& backend, const RunConfig& cfg, const PlanOptions& opts = {});

/// The prompt run_plan would send for one item.
AssembledPrompt assemble_for(const BenchItem& item, const SupportSet& support,
                             const RunConfig& cfg, const EmbeddingProvider* embedder,
                             RetrievalCache* cache = nullptr,
                             const Layout* prefix = nullptr, ExemplarSet* chosen = nullptr);

// ---- eval ----------------------------------------------------------------

struct ReportRow {
  std::string label;
  std::size_t records = 0;
  std::size_t samples = 0;
  std::size_t parse_failures = 0;
  std::size_t empty_predictions = 0;
  std::size_t out_of_vocabulary = 0;
  std::optional<double> precision;  // percent; null for comparison prompts
  std::optional<double> recall;
  std::optional<double> accuracy;
};

struct SceneReport {
  std::size_t scenes = 0;
  std::optional<double> out_of_bound_rate;  // percent
  std::optional<double> kl_divergence;
  std::optional<DuplicationHistogram> duplication;
  // Image-quality metrics need rendered images; kept for schema stability.
  std::optional<double> fid;
};

struct EvalReport {
  Task task = Task::kSpatial;
  std::size_t records = 0;
  std::size_t samples = 0;
  std::size_t parse_failures = 0;
  std::size_t backend_errors = 0;
  double parse_failure_rate = 0;  // percent of scored samples
  std::vector<ReportRow> rows;
  ReportRow overall;
  std::optional<SceneReport> scene;
};

struct EvalOptions {
  // Bench records without predictions are an error unless set.
  bool allow_missing = false;
  // Enables the duplication analysis for scenes.
  const SupportSet* support = nullptr;
};

/// Scores predictions against the bench. Samples with backend errors are
/// counted but not scored; parse failures score zero. Throws DataError
/// listing ids when predictions name records missing from the bench.
EvalReport evaluate(const std::vector<PredictionRecord>& predictions,
                    const std::vector<BenchItem>& bench, Task task, const EvalOptions& opts = {});

std::string report_to_json(const EvalReport& r);
std::string report_table(const EvalReport& r);

// ---- manifest ------------------------------------------------------------

struct RunManifest {
  std::string command;
  RunConfig config;
  std::string backend_identity;
  std::map<std::string, std::string> inputs;
  std::map<std::string, std::string> outputs;
  std::vector<std::pair<std::string, std::vector<SampleStatus>>> records;
  std::optional<std::string> fatal_error;
  double elapsed_ms = 0;
};

RunManifest manifest_for(const std::string& command, const RunConfig& cfg,
                         const std::string& backend_identity, const PlanResult& result);

std::string manifest_to_json(const RunManifest& m);

}  // namespace layoutplan

#endif  // LAYOUTPLAN_PIPELINE_H_
