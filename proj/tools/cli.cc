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


#include "cli.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "layoutplan/ablation.h"
#include "layoutplan/bench_builder.h"
#include "layoutplan/errors.h"
#include "layoutplan/layout_io.h"
#include "layoutplan/pipeline.h"
#include "layoutplan/render_svg.h"

namespace layoutplan::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// Raised for flag combinations CLI11 cannot check on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

std::string first_line(const fs::path& path) {
  std::istringstream in(read_text_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) return line;
  }
  return {};
}

// Task named by a prompt-record bench, if any.
std::optional<Task> task_in_bench(const fs::path& bench) {
  const std::string line = first_line(bench);
  if (line.empty()) return std::nullopt;
  auto j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("gt_layout")) return std::nullopt;
  auto it = j.find("task");
  if (it == j.end() || !it->is_string()) return std::nullopt;
  return task_from_string(it->get<std::string>());
}

std::optional<Task> task_in_config(const fs::path& config) {
  auto j = json::parse(read_text_file(config), nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  if (auto c = j.find("config"); c != j.end() && c->is_object()) j = *c;
  auto it = j.find("task");
  if (it == j.end() || !it->is_string()) return std::nullopt;
  return task_from_string(it->get<std::string>());
}

// ---- shared run flags ----------------------------------------------------

struct RunFlags {
  std::string task, backend, model, exemplar_mode, canvas, config, base_url, form, api_key_env,
      embedder;
  int k = 0, n_samples = 0, jobs = 0, jitter = 0, max_tokens = 0;
  std::uint64_t seed = 0;
  double temperature = 0, meters = 0;
  std::vector<std::string> ablate;
  std::map<std::string, CLI::Option*> opts;

  bool given(const std::string& name) const {
    auto it = opts.find(name);
    return it != opts.end() && it->second->count() > 0;
  }
};

void add_run_flags(CLI::App* app, RunFlags& f) {
  f.opts["task"] = app->add_option("--task", f.task, "numerical, spatial, bedroom, living_room, keypoint");
  f.opts["backend"] = app->add_option("--backend", f.backend, "Completion backend")
                          ->check(CLI::IsMember({"http", "mock"}));
  f.opts["model"] = app->add_option("--model", f.model, "Model id sent to the endpoint");
  f.opts["k"] = app->add_option("--k", f.k, "In-context exemplars per prompt")
                    ->check(CLI::NonNegativeNumber);
  f.opts["seed"] = app->add_option("--seed", f.seed, "Seed for sampling and fixed-random exemplars");
  f.opts["n_samples"] = app->add_option("--n-samples", f.n_samples, "Completions per record")
                            ->check(CLI::PositiveNumber);
  f.opts["canvas"] = app->add_option("--canvas", f.canvas, "Canvas size, N or WxH pixels");
  f.opts["meters"] = app->add_option("--meters-per-canvas", f.meters,
                                     "Meters mapped onto the larger canvas side (scenes)");
  f.opts["ablate"] = app->add_option("--ablate", f.ablate, "Prompt components to drop")
                         ->check(CLI::IsMember({"no-instruction", "no-css", "no-norm"}));
  f.opts["exemplar_mode"] =
      app->add_option("--exemplar-mode", f.exemplar_mode, "Exemplar selection")
          ->check(CLI::IsMember({"retrieval", "fixed-random"}));
  f.opts["jobs"] = app->add_option("--jobs", f.jobs, "Records planned concurrently")
                       ->check(CLI::PositiveNumber);
  f.opts["jitter"] = app->add_option("--mock-jitter", f.jitter, "Mock backend jitter in pixels")
                         ->check(CLI::NonNegativeNumber);
  f.opts["temperature"] = app->add_option("--temperature", f.temperature, "Sampling temperature");
  f.opts["max_tokens"] = app->add_option("--max-tokens", f.max_tokens, "Completion token budget")
                             ->check(CLI::PositiveNumber);
  f.opts["base_url"] = app->add_option("--base-url", f.base_url, "Endpoint, scheme://host[:port]");
  f.opts["form"] = app->add_option("--form", f.form, "Request form")
                       ->check(CLI::IsMember({"chat", "plain"}));
  f.opts["api_key_env"] = app->add_option("--api-key-env", f.api_key_env,
                                          "Environment variable holding the API key");
  f.opts["embedder"] = app->add_option("--embedder", f.embedder, "Caption embedder")
                           ->check(CLI::IsMember({"hashed-bow", "remote"}));
  f.opts["config"] = app->add_option("--config", f.config,
                                     "JSON config or run manifest; its keys override flags");
}

CanvasSpec parse_canvas(const std::string& text, CanvasSpec base) {
  int w = 0, h = 0;
  char x = 0;
  std::istringstream in(text);
  if (text.find('x') != std::string::npos) {
    in >> w >> x >> h;
  } else {
    in >> w;
    h = w;
  }
  if (!in || w <= 0 || h <= 0 || !(in >> std::ws).eof()) {
    throw UsageError("--canvas expects N or WxH with positive integers, got '" + text + "'");
  }
  base.width_px = w;
  base.height_px = h;
  return base;
}

Task resolve_task(const RunFlags& f, const std::optional<fs::path>& bench) {
  if (f.given("task")) return task_from_string(f.task);
  if (f.given("config")) {
    if (auto t = task_in_config(f.config)) return *t;
  }
  if (bench) {
    if (auto t = task_in_bench(*bench)) return *t;
  }
  throw UsageError("--task is required when the bench does not name its task");
}

RunConfig resolve_config(const RunFlags& f, Task task) {
  RunConfig c = RunConfig::defaults_for(task);
  if (f.given("backend")) c.backend = backend_kind_from_string(f.backend);
  if (f.given("model")) c.params.model_id = f.model;
  if (f.given("k")) c.selection.k = f.k;
  if (f.given("seed")) {
    c.params.seed = f.seed;
    c.selection.seed = f.seed;
  }
  if (f.given("n_samples")) c.params.n_samples = f.n_samples;
  if (f.given("canvas")) c.canvas = parse_canvas(f.canvas, c.canvas);
  if (f.given("meters")) c.canvas.meters_per_canvas = f.meters;
  for (const auto& a : f.ablate) {
    if (a == "no-instruction") c.include_instruction = false;
    if (a == "no-css") c.style.use_css = false;
    if (a == "no-norm") c.style.use_normalized_ints = false;
  }
  if (f.given("exemplar_mode")) c.selection.mode = selection_mode_from_string(f.exemplar_mode);
  if (f.given("jobs")) c.jobs = f.jobs;
  if (f.given("jitter")) c.mock_jitter_px = f.jitter;
  if (f.given("temperature")) c.params.temperature = f.temperature;
  if (f.given("max_tokens")) c.params.max_tokens = f.max_tokens;
  if (f.given("base_url")) c.endpoint.base_url = f.base_url;
  if (f.given("form")) c.endpoint.form = f.form == "chat" ? PromptForm::kChat : PromptForm::kPlain;
  if (f.given("api_key_env")) c.endpoint.api_key_env = f.api_key_env;
  if (f.given("embedder")) {
    c.embedder = f.embedder == "remote" ? EmbedderKind::kRemote : EmbedderKind::kHashedBow;
  }
  if (f.given("config")) c = run_config_from_json(read_text_file(f.config), c);
  c.task = task;
  c.validate();
  return c;
}

// Everything a planning run needs besides the bench.
struct Prepared {
  RunConfig cfg;
  SupportSet support;
  std::shared_ptr<const EmbeddingProvider> embedder;
  std::unique_ptr<AuditLog> audit;
  std::unique_ptr<Backend> backend;
};

Prepared prepare(const RunFlags& f, Task task, const fs::path& support_path,
                 const std::string& audit_path) {
  Prepared p;
  p.cfg = resolve_config(f, task);
  if (p.cfg.backend == BackendKind::kHttp) {
    // Fail before any work when the key is missing.
    (void)read_credential(p.cfg.endpoint.api_key_env);
  }
  p.embedder = make_embedder(p.cfg);
  p.support = prepare_support(load_support(support_path), *p.embedder);
  if (!audit_path.empty()) p.audit = std::make_unique<AuditLog>(audit_path);
  p.backend = make_backend(p.cfg, p.support, p.embedder, p.audit.get());
  return p;
}

// ---- build-bench ---------------------------------------------------------

struct BuildBenchArgs {
  std::string instances, captions, out_dir, split = "test", canvas = "64";
  std::uint64_t seed = 0;
};

int cmd_build_bench(const BuildBenchArgs& a, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  if (!fs::exists(a.instances)) throw DataError("cannot open '" + a.instances + "'");
  if (!a.captions.empty() && !fs::exists(a.captions)) {
    throw DataError("cannot open '" + a.captions + "'");
  }
  BenchConfig cfg;
  cfg.seed = a.seed;
  cfg.canvas = parse_canvas(a.canvas, CanvasSpec::image_default());

  std::vector<AnnotationRecord> records;
  const std::string head = read_text_file(a.instances);
  if (head.find_first_not_of(" \t\r\n") == std::string::npos) {
    err << "layoutplan: warning: " << a.instances << " is empty; no records built\n";
  } else {
    std::optional<fs::path> captions;
    if (!a.captions.empty()) captions = a.captions;
    records = load_coco(a.instances, captions);
    if (records.empty()) err << "layoutplan: warning: no images in " << a.instances << "\n";
  }

  const BenchSplit candidates = build_candidates(records, cfg);
  const BenchSplit split = a.split == "train" ? candidates : sample_split(candidates, cfg);

  std::vector<std::string> violations;
  for (const auto& [key, recs] : split.by_subtype) {
    for (const auto& r : recs) {
      for (auto& v : self_consistency_violations(r)) violations.push_back(std::move(v));
    }
  }
  if (!violations.empty()) {
    for (const auto& v : violations) err << "layoutplan: " << v << "\n";
    throw DataError(std::to_string(violations.size()) + " records contradict their own labels");
  }

  json manifest;
  manifest["command"] = "build-bench";
  manifest["seed"] = a.seed;
  manifest["split"] = a.split;
  manifest["canvas"] = {{"width_px", cfg.canvas.width_px}, {"height_px", cfg.canvas.height_px}};
  manifest["inputs"] = {{"instances", a.instances}, {"captions", a.captions}};
  json counts = json::object();
  json outputs = json::object();
  out << "subtype                          candidates  written\n";
  for (const auto& [key, recs] : split.by_subtype) {
    std::string file = key;
    std::replace(file.begin(), file.end(), '/', '_');
    file += "_" + a.split + ".jsonl";
    const fs::path path = fs::path(a.out_dir) / file;
    write_prompt_records(path, recs);
    const auto cand = candidates.by_subtype.count(key) ? candidates.by_subtype.at(key).size() : 0;
    counts[key] = {{"candidates", cand}, {"written", recs.size()}};
    outputs[key] = path.string();
    out << fmt::format("{:<32} {:>10} {:>8}\n", key, cand, recs.size());
  }
  manifest["counts"] = std::move(counts);
  manifest["outputs"] = std::move(outputs);
  manifest["self_consistency_violations"] = 0;
  manifest["timing"] = {{"elapsed_ms", elapsed_ms(start)}};
  write_text_file(fs::path(a.out_dir) / ("manifest_" + a.split + ".json"), manifest.dump(2) + "\n");
  return kOk;
}

// ---- plan ----------------------------------------------------------------

struct PlanArgs {
  std::string bench, support, out, manifest, prefixes, audit;
  RunFlags flags;
};

int cmd_plan(const PlanArgs& a, std::ostream& out, std::ostream& err) {
  const Task task = resolve_task(a.flags, fs::path(a.bench));
  Prepared p = prepare(a.flags, task, a.support, a.audit);
  const auto bench = load_bench(a.bench, task);
  if (bench.empty()) err << "layoutplan: warning: " << a.bench << " has no records\n";

  std::map<std::string, Layout> prefixes;
  PlanOptions po;
  if (!a.prefixes.empty()) {
    std::set<std::string> ids;
    for (const auto& b : bench) ids.insert(b.id);
    for (auto& r : read_layout_records(a.prefixes)) {
      if (ids.count(r.id) == 0) {
        err << "layoutplan: warning: prefix '" << r.id << "' matches no bench record\n";
      }
      prefixes.emplace(r.id, std::move(r.layout));
    }
    po.prefixes = &prefixes;
  }
  RetrievalCache cache;
  po.cache = &cache;
  po.embedder = p.embedder.get();

  PlanResult result = run_plan(bench, p.support, *p.backend, p.cfg, po);
  write_predictions(a.out, result.predictions);

  RunManifest m = manifest_for("plan", p.cfg, p.backend->identity(), result);
  m.inputs = {{"bench", a.bench}, {"support", a.support}};
  if (!a.prefixes.empty()) m.inputs["prefixes"] = a.prefixes;
  if (a.flags.given("config")) m.inputs["config"] = a.flags.config;
  m.outputs = {{"predictions", a.out}};
  if (!a.audit.empty()) m.outputs["audit_log"] = a.audit;
  const std::string manifest_path = a.manifest.empty() ? a.out + ".manifest.json" : a.manifest;
  write_text_file(manifest_path, manifest_to_json(m));

  std::array<std::size_t, 3> counts{};
  for (const auto& pr : result.predictions) ++counts[static_cast<std::size_t>(pr.status)];
  out << fmt::format("planned {} of {} records: {} ok, {} parse failed, {} backend errors\n",
                     result.records_done, bench.size(), counts[0], counts[1], counts[2]);
  if (result.fatal_error) {
    err << "layoutplan: backend error, stopping: " << *result.fatal_error << "\n"
        << "layoutplan: partial predictions kept in " << a.out << "\n";
    return kBackend;
  }
  return kOk;
}

// ---- eval ----------------------------------------------------------------

struct EvalArgs {
  std::string predictions, bench, task, support, out, table;
  bool allow_missing = false;
  CLI::Option* task_opt = nullptr;
};

int cmd_eval(const EvalArgs& a, std::ostream& out, std::ostream&) {
  Task task;
  if (a.task_opt->count() > 0) {
    task = task_from_string(a.task);
  } else if (auto t = task_in_bench(a.bench)) {
    task = *t;
  } else {
    throw UsageError("--task is required when the bench does not name its task");
  }
  const auto bench = load_bench(a.bench, task);
  const auto predictions = read_predictions(a.predictions);
  std::optional<SupportSet> support;
  EvalOptions eo;
  eo.allow_missing = a.allow_missing;
  if (!a.support.empty()) {
    support = load_support(a.support);
    eo.support = &*support;
  }
  const EvalReport report = evaluate(predictions, bench, task, eo);
  const std::string table = report_table(report);
  if (!a.out.empty()) write_text_file(a.out, report_to_json(report));
  if (!a.table.empty()) write_text_file(a.table, table);
  out << table;
  return kOk;
}

// ---- render --------------------------------------------------------------

struct RenderArgs {
  std::vector<std::string> inputs;
  std::string out_dir, mode;
};

std::string file_stem(std::string s) {
  for (auto& c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')) c = '_';
  }
  return s.empty() ? "layout" : s;
}

int cmd_render(const RenderArgs& a, std::ostream& out, std::ostream& err) {
  std::optional<RenderMode> forced;
  if (!a.mode.empty()) forced = render_mode_from_string(a.mode);
  std::size_t written = 0, skipped = 0;
  for (const auto& input : a.inputs) {
    std::istringstream in(read_text_file(input));
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      const std::string where = input + ":" + std::to_string(lineno);
      try {
        std::string name;
        std::optional<Layout> layout;
        if (line.find("\"gt_layout\"") != std::string::npos) {
          PromptRecord r = prompt_record_from_json(line);
          name = r.id;
          layout = std::move(r.gt_layout);
        } else if (line.find("\"completion_hash\"") != std::string::npos) {
          PredictionRecord r = prediction_from_json(line);
          name = r.id + "_s" + std::to_string(r.sample);
          layout = std::move(r.layout);
        } else {
          LayoutRecord r = layout_record_from_json(line);
          name = r.id.empty() ? "line" + std::to_string(lineno) : r.id;
          layout = std::move(r.layout);
        }
        if (!layout) {
          ++skipped;
          continue;
        }
        const RenderMode mode = forced ? *forced : render_mode_for(layout->dialect);
        write_text_file(fs::path(a.out_dir) / (file_stem(name) + ".svg"),
                        render_svg(*layout, mode));
        ++written;
      } catch (const std::invalid_argument& e) {
        err << "layoutplan: warning: " << where << ": skipped: " << e.what() << "\n";
        ++skipped;
      } catch (const DataError& e) {
        err << "layoutplan: warning: " << where << ": skipped: " << e.what() << "\n";
        ++skipped;
      }
    }
  }
  out << fmt::format("wrote {} SVG files, skipped {}\n", written, skipped);
  return kOk;
}

// ---- ablate --------------------------------------------------------------

struct AblateArgs {
  std::string bench, support, out_dir;
  std::vector<int> k_sweep = {4, 8, 16};
  bool parallel = false;
  RunFlags flags;
};

int cmd_ablate(const AblateArgs& a, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const Task task = resolve_task(a.flags, fs::path(a.bench));
  Prepared p = prepare(a.flags, task, a.support, "");
  const auto bench = load_bench(a.bench, task);
  AblationGrid grid;
  grid.k_sweep = a.k_sweep;
  AblationOptions opts;
  opts.parallel_variants = a.parallel;
  RetrievalCache cache;
  const auto rows = run_grid(bench, p.support, *p.backend, p.cfg, grid, opts, &cache);

  const fs::path dir(a.out_dir);
  write_text_file(dir / "ablation.csv", ablation_csv(rows));
  write_text_file(dir / "ablation.md", ablation_markdown(rows));
  json manifest;
  manifest["command"] = "ablate";
  manifest["config"] = json::parse(run_config_to_json(p.cfg));
  manifest["seed"] = p.cfg.params.seed;
  manifest["backend"] = p.backend->identity();
  manifest["inputs"] = {{"bench", a.bench}, {"support", a.support}};
  manifest["k_sweep"] = a.k_sweep;
  json variants = json::array();
  std::size_t failed = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const std::string stem = fmt::format("{:02}_i{}c{}n{}_k{}", i, r.variant.instruction ? 1 : 0,
                                         r.variant.css ? 1 : 0, r.variant.normalization ? 1 : 0,
                                         r.variant.k);
    write_predictions(dir / "variants" / (stem + ".predictions.jsonl"), r.predictions);
    json v = {{"label", r.variant.label()}, {"predictions", "variants/" + stem + ".predictions.jsonl"}};
    if (r.report) {
      write_text_file(dir / "variants" / (stem + ".report.json"), report_to_json(*r.report));
      v["report"] = "variants/" + stem + ".report.json";
    }
    if (!r.error.empty()) {
      ++failed;
      v["error"] = r.error;
      err << "layoutplan: variant " << r.variant.label() << " failed: " << r.error << "\n";
    }
    variants.push_back(std::move(v));
  }
  manifest["variants"] = std::move(variants);
  manifest["retrieval_cache"] = {{"hits", cache.hits()}, {"misses", cache.misses()}};
  manifest["timing"] = {{"elapsed_ms", elapsed_ms(start)}};
  write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
  out << ablation_markdown(rows);
  return failed > 0 ? kBackend : kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"LLM layout planning: benchmarks, prompting, evaluation", "layoutplan"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "layoutplan 0.1.0");

  BuildBenchArgs bb;
  auto* build = app.add_subcommand("build-bench", "Build prompt records from COCO annotations");
  build->add_option("--instances", bb.instances, "COCO instances JSON")->required();
  build->add_option("--captions", bb.captions, "COCO captions JSON");
  build->add_option("--out", bb.out_dir, "Output directory")->required();
  build->add_option("--seed", bb.seed, "Sampling seed for the test split");
  build->add_option("--split", bb.split, "train keeps every candidate; test samples")
      ->check(CLI::IsMember({"train", "test"}));
  build->add_option("--canvas", bb.canvas, "Canvas size, N or WxH pixels");

  PlanArgs pa;
  auto* plan = app.add_subcommand("plan", "Generate layouts for bench records");
  plan->add_option("--bench", pa.bench, "Bench JSON lines")->required();
  plan->add_option("--support", pa.support, "Exemplar pool JSON lines")->required();
  plan->add_option("--out", pa.out, "Predictions JSON lines")->required();
  plan->add_option("--manifest", pa.manifest, "Run manifest path (default: <out>.manifest.json)");
  plan->add_option("--complete-scene", pa.prefixes, "Partial layouts to continue, by record id");
  plan->add_option("--audit-log", pa.audit, "Write every request and response here");
  add_run_flags(plan, pa.flags);

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "Score predictions against a bench");
  eval->add_option("--predictions", ea.predictions, "Predictions JSON lines")->required();
  eval->add_option("--bench", ea.bench, "Bench JSON lines")->required();
  ea.task_opt = eval->add_option("--task", ea.task, "Task, when the bench does not name it");
  eval->add_option("--support", ea.support, "Exemplar pool, enables duplication analysis");
  eval->add_option("--out", ea.out, "Report JSON path");
  eval->add_option("--table", ea.table, "Text table path");
  eval->add_flag("--allow-missing", ea.allow_missing, "Score a partial prediction file");

  RenderArgs ra;
  auto* render = app.add_subcommand("render", "Draw layouts as SVG");
  render->add_option("--input,-i", ra.inputs, "Layout, prompt or prediction JSON lines")
      ->required();
  render->add_option("--out", ra.out_dir, "Output directory")->required();
  render->add_option("--mode", ra.mode, "Force 2d, topdown3d or keypoint")
      ->check(CLI::IsMember({"2d", "topdown3d", "keypoint"}));

  AblateArgs aa;
  auto* ablate = app.add_subcommand("ablate", "Run the prompt-component grid and k sweep");
  ablate->add_option("--bench", aa.bench, "Bench JSON lines")->required();
  ablate->add_option("--support", aa.support, "Exemplar pool JSON lines")->required();
  ablate->add_option("--out", aa.out_dir, "Output directory")->required();
  ablate->add_option("--k-sweep", aa.k_sweep, "Exemplar counts for the sweep rows")
      ->delimiter(',');
  ablate->add_flag("--parallel-variants", aa.parallel, "Run variants concurrently");
  add_run_flags(ablate, aa.flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (build->parsed()) return cmd_build_bench(bb, out, err);
    if (plan->parsed()) return cmd_plan(pa, out, err);
    if (eval->parsed()) return cmd_eval(ea, out, err);
    if (render->parsed()) return cmd_render(ra, out, err);
    if (ablate->parsed()) return cmd_ablate(aa, out, err);
  } catch (const UsageError& e) {
    err << "layoutplan: " << e.what() << "\n";
    return kUsage;
  } catch (const BackendError& e) {
    err << "layoutplan: " << e.what() << "\n";
    return e.kind() == BackendError::Kind::kConfig ? kUsage : kBackend;
  } catch (const DataError& e) {
    err << "layoutplan: " << e.what() << "\n";
    return kData;
  } catch (const std::invalid_argument& e) {
    err << "layoutplan: " << e.what() << "\n";
    return kUsage;
  } catch (const fs::filesystem_error& e) {
    err << "layoutplan: " << e.what() << "\n";
    return kData;
  }
  return kUsage;
}

}  // namespace layoutplan::cli
