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


#include "layoutplan/pipeline.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "json_codec.h"
#include "layoutplan/css_dsl.h"
#include "layoutplan/errors.h"
#include "layoutplan/hashing.h"
#include "layoutplan/layout_io.h"

namespace layoutplan {

using detail::ojson;
using json = nlohmann::json;

std::string_view to_string(BackendKind k) { return k == BackendKind::kMock ? "mock" : "http"; }

BackendKind backend_kind_from_string(std::string_view s) {
  if (s == "mock") return BackendKind::kMock;
  if (s == "http") return BackendKind::kHttp;
  throw std::invalid_argument(fmt::format("unknown backend '{}' (expected mock or http)", s));
}

Dialect dialect_for(Task task) {
  switch (task) {
    case Task::kNumerical:
    case Task::kSpatial:
      return Dialect::kImage2d;
    case Task::kBedroom:
    case Task::kLivingRoom:
      return Dialect::kScene3d;
    case Task::kKeypoint:
      return Dialect::kKeypoint;
  }
  return Dialect::kImage2d;
}

RunConfig RunConfig::defaults_for(Task task) {
  RunConfig c;
  c.task = task;
  c.params = GenerationParams::defaults_for(task);
  c.selection.k = default_k(task);
  c.canvas = dialect_for(task) == Dialect::kScene3d ? CanvasSpec::scene_default()
                                                    : CanvasSpec::image_default();
  return c;
}

Dialect RunConfig::dialect() const { return dialect_for(task); }

void RunConfig::validate() const {
  params.validate();
  canvas.validate();
  if (selection.k < 0) throw std::invalid_argument("k must not be negative");
  if (jobs < 1) throw std::invalid_argument("jobs must be at least 1");
  if (mock_jitter_px < 0) throw std::invalid_argument("mock jitter must not be negative");
  if (dialect() == Dialect::kScene3d && !(canvas.meters_per_canvas > 0)) {
    throw std::invalid_argument("scene tasks need canvas.meters_per_canvas > 0");
  }
  if (endpoint.max_in_flight < 1) throw std::invalid_argument("max_in_flight must be at least 1");
  if (endpoint.retry.max_attempts < 1) throw std::invalid_argument("max_attempts must be >= 1");
}

// ---- config JSON ---------------------------------------------------------

namespace {

std::string_view to_string(PromptForm f) { return f == PromptForm::kChat ? "chat" : "plain"; }

PromptForm prompt_form_from_string(std::string_view s) {
  if (s == "chat") return PromptForm::kChat;
  if (s == "plain") return PromptForm::kPlain;
  throw std::invalid_argument(fmt::format("unknown prompt form '{}'", s));
}

std::string_view to_string(EmbedderKind k) {
  return k == EmbedderKind::kHashedBow ? "hashed-bow" : "remote";
}

EmbedderKind embedder_from_string(std::string_view s) {
  if (s == "hashed-bow") return EmbedderKind::kHashedBow;
  if (s == "remote") return EmbedderKind::kRemote;
  throw std::invalid_argument(fmt::format("unknown embedder '{}'", s));
}

template <typename T>
void take(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) out = it->get<T>();
}

void take_ms(const json& j, const char* key, std::chrono::milliseconds& out) {
  if (auto it = j.find(key); it != j.end()) out = std::chrono::milliseconds(it->get<long long>());
}

}  // namespace

std::string run_config_to_json(const RunConfig& c) {
  ojson j;
  j["task"] = std::string(to_string(c.task));
  j["backend"] = std::string(to_string(c.backend));
  j["model"] = c.params.model_id;
  j["temperature"] = c.params.temperature;
  j["max_tokens"] = c.params.max_tokens;
  j["n_samples"] = c.params.n_samples;
  j["presence_penalty"] = c.params.presence_penalty;
  j["frequency_penalty"] = c.params.frequency_penalty;
  j["seed"] = c.params.seed;
  j["exemplar_mode"] = std::string(to_string(c.selection.mode));
  j["k"] = c.selection.k;
  j["instruction"] = c.include_instruction;
  j["css"] = c.style.use_css;
  j["normalization"] = c.style.use_normalized_ints;
  j["canvas"] = detail::canvas_to_json(c.canvas);
  j["jobs"] = c.jobs;
  j["mock_jitter_px"] = c.mock_jitter_px;
  const auto& e = c.endpoint;
  j["endpoint"] = {{"base_url", e.base_url},
                   {"chat_path", e.chat_path},
                   {"completion_path", e.completion_path},
                   {"form", std::string(to_string(e.form))},
                   {"api_key_env", e.api_key_env},
                   {"timeout_s", e.timeout_s},
                   {"max_in_flight", e.max_in_flight},
                   {"retry",
                    {{"max_attempts", e.retry.max_attempts},
                     {"initial_backoff_ms", e.retry.initial_backoff.count()},
                     {"multiplier", e.retry.multiplier},
                     {"max_backoff_ms", e.retry.max_backoff.count()}}}};
  j["embedder"] = std::string(to_string(c.embedder));
  const auto& r = c.remote_embedding;
  j["remote_embedding"] = {{"base_url", r.base_url},
                           {"path", r.path},
                           {"model", r.model},
                           {"api_key_env", r.api_key_env},
                           {"timeout_s", r.timeout_s}};
  j["char_budget"] = c.char_budget;
  return j.dump(2) + "\n";
}

RunConfig run_config_from_json(std::string_view json_text, RunConfig c) {
  json j = detail::parse_json(json_text, "config");
  if (!j.is_object()) throw DataError("config: expected a JSON object");
  // A manifest carries the config it ran with.
  if (auto it = j.find("config"); it != j.end() && it->is_object()) j = *it;
  try {
    if (auto it = j.find("task"); it != j.end()) c.task = task_from_string(it->get<std::string>());
    if (auto it = j.find("backend"); it != j.end()) {
      c.backend = backend_kind_from_string(it->get<std::string>());
    }
    take(j, "model", c.params.model_id);
    take(j, "temperature", c.params.temperature);
    take(j, "max_tokens", c.params.max_tokens);
    take(j, "n_samples", c.params.n_samples);
    take(j, "presence_penalty", c.params.presence_penalty);
    take(j, "frequency_penalty", c.params.frequency_penalty);
    if (auto it = j.find("seed"); it != j.end()) {
      c.params.seed = it->get<std::uint64_t>();
      c.selection.seed = c.params.seed;
    }
    if (auto it = j.find("exemplar_mode"); it != j.end()) {
      c.selection.mode = selection_mode_from_string(it->get<std::string>());
    }
    take(j, "k", c.selection.k);
    take(j, "instruction", c.include_instruction);
    take(j, "css", c.style.use_css);
    take(j, "normalization", c.style.use_normalized_ints);
    if (auto it = j.find("canvas"); it != j.end()) c.canvas = detail::canvas_from_json(*it);
    take(j, "jobs", c.jobs);
    take(j, "mock_jitter_px", c.mock_jitter_px);
    if (auto it = j.find("endpoint"); it != j.end()) {
      auto& e = c.endpoint;
      take(*it, "base_url", e.base_url);
      take(*it, "chat_path", e.chat_path);
      take(*it, "completion_path", e.completion_path);
      if (auto f = it->find("form"); f != it->end()) {
        e.form = prompt_form_from_string(f->get<std::string>());
      }
      take(*it, "api_key_env", e.api_key_env);
      take(*it, "timeout_s", e.timeout_s);
      take(*it, "max_in_flight", e.max_in_flight);
      if (auto r = it->find("retry"); r != it->end()) {
        take(*r, "max_attempts", e.retry.max_attempts);
        take_ms(*r, "initial_backoff_ms", e.retry.initial_backoff);
        take(*r, "multiplier", e.retry.multiplier);
        take_ms(*r, "max_backoff_ms", e.retry.max_backoff);
      }
    }
    if (auto it = j.find("embedder"); it != j.end()) {
      c.embedder = embedder_from_string(it->get<std::string>());
    }
    if (auto it = j.find("remote_embedding"); it != j.end()) {
      auto& r = c.remote_embedding;
      take(*it, "base_url", r.base_url);
      take(*it, "path", r.path);
      take(*it, "model", r.model);
      take(*it, "api_key_env", r.api_key_env);
      take(*it, "timeout_s", r.timeout_s);
    }
    take(j, "char_budget", c.char_budget);
  } catch (const json::exception& e) {
    throw DataError(fmt::format("config: {}", e.what()));
  } catch (const std::invalid_argument& e) {
    throw DataError(fmt::format("config: {}", e.what()));
  }
  return c;
}

// ---- inputs --------------------------------------------------------------

BenchItem bench_item_from(const PromptRecord& r) {
  BenchItem b;
  b.id = r.id;
  b.task = r.task;
  b.subtype = std::string(to_string(r.subtype));
  b.condition = ConditionText::caption(r.text);
  b.gt_layout = r.gt_layout;
  b.gt_counts = r.gt_counts;
  b.comparison = r.comparison;
  b.spatial = r.gt_relation;
  return b;
}

BenchItem bench_item_from(const LayoutRecord& r, Task task) {
  BenchItem b;
  b.id = r.id;
  b.task = task;
  b.condition = r.layout.condition;
  b.gt_layout = r.layout;
  b.gt_counts = count_categories(r.layout);
  return b;
}

namespace {

template <typename F>
void for_each_line(const std::filesystem::path& path, F&& f) {
  const std::string text = read_text_file(path);
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      f(line);
    } catch (const DataError& e) {
      throw DataError(fmt::format("{}:{}: {}", path.string(), lineno, e.what()));
    }
  }
}

bool is_prompt_record(std::string_view line) {
  return line.find("\"gt_layout\"") != std::string_view::npos;
}

}  // namespace

std::vector<BenchItem> load_bench(const std::filesystem::path& path, Task task) {
  std::vector<BenchItem> out;
  std::set<std::string> seen;
  for_each_line(path, [&](const std::string& line) {
    BenchItem b = is_prompt_record(line) ? bench_item_from(prompt_record_from_json(line))
                                         : bench_item_from(layout_record_from_json(line), task);
    if (!seen.insert(b.id).second) throw DataError(fmt::format("duplicate record id '{}'", b.id));
    out.push_back(std::move(b));
  });
  return out;
}

SupportSet load_support(const std::filesystem::path& path) {
  std::vector<LayoutRecord> records;
  for_each_line(path, [&](const std::string& line) {
    if (is_prompt_record(line)) {
      PromptRecord p = prompt_record_from_json(line);
      records.push_back({std::move(p.id), std::move(p.gt_layout)});
    } else {
      records.push_back(layout_record_from_json(line));
    }
  });
  try {
    return SupportSet::from_layout_records(std::move(records));
  } catch (const std::invalid_argument& e) {
    throw DataError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::shared_ptr<const EmbeddingProvider> make_embedder(const RunConfig& cfg) {
  if (cfg.embedder == EmbedderKind::kRemote) {
    return std::make_shared<RemoteEmbeddingProvider>(cfg.remote_embedding);
  }
  return std::make_shared<HashedBagOfWordsEmbedder>();
}

SupportSet prepare_support(const SupportSet& support, const EmbeddingProvider& embedder) {
  const auto recs = support.records();
  const bool captions = std::any_of(recs.begin(), recs.end(), [](const SupportRecord& r) {
    return r.condition.kind == ConditionKind::kCaption && !r.embedding;
  });
  return captions ? support.with_embeddings(embedder) : support;
}

std::unique_ptr<Backend> make_backend(const RunConfig& cfg, const SupportSet& support,
                                      std::shared_ptr<const EmbeddingProvider> embedder,
                                      AuditLog* audit) {
  if (cfg.backend == BackendKind::kMock) {
    return std::make_unique<MockBackend>(support, cfg.mock_jitter_px, std::move(embedder), audit);
  }
  return std::make_unique<HttpBackend>(cfg.endpoint, real_sleeper(), audit);
}

std::optional<FurnitureVocabulary> vocabulary_for(Task task, const SupportSet& support) {
  if (task == Task::kBedroom) return FurnitureVocabulary::bedroom();
  if (task != Task::kLivingRoom || support.empty()) return std::nullopt;
  CountVector counts;
  long long total = 0;
  for (const auto& r : support.records()) {
    for (const auto& [cat, n] : count_categories(r.layout)) {
      counts[cat] += n;
      total += n;
    }
  }
  if (total == 0) return std::nullopt;
  FurnitureVocabulary v;
  for (const auto& [cat, n] : counts) {
    v.categories.push_back(cat);
    v.frequencies.emplace_back(cat, static_cast<double>(n) / static_cast<double>(total));
  }
  return v;
}

// ---- predictions ---------------------------------------------------------

std::string_view to_string(SampleStatus s) {
  switch (s) {
    case SampleStatus::kOk:
      return "ok";
    case SampleStatus::kParseFailed:
      return "parse_failed";
    case SampleStatus::kBackendError:
      return "backend_error";
  }
  return "ok";
}

SampleStatus sample_status_from_string(std::string_view s) {
  for (auto st : {SampleStatus::kOk, SampleStatus::kParseFailed, SampleStatus::kBackendError}) {
    if (to_string(st) == s) return st;
  }
  throw std::invalid_argument(fmt::format("unknown sample status '{}'", s));
}

std::string to_json_line(const PredictionRecord& p) {
  ojson j;
  j["id"] = p.id;
  j["sample"] = p.sample;
  j["status"] = std::string(to_string(p.status));
  j["completion_hash"] = p.completion_hash;
  j["exemplars"] = p.exemplar_ids;
  j["warnings"] = p.warnings;
  j["clamped"] = p.clamped;
  j["layout"] = p.layout ? detail::layout_to_json(*p.layout) : ojson(nullptr);
  if (!p.error.empty()) j["error"] = p.error;
  return detail::dump_line(j);
}

PredictionRecord prediction_from_json(std::string_view line) {
  const json j = detail::parse_json(line, "prediction");
  try {
    PredictionRecord p;
    p.id = j.at("id").get<std::string>();
    p.sample = j.value("sample", 0);
    p.status = sample_status_from_string(j.at("status").get<std::string>());
    p.completion_hash = j.value("completion_hash", std::string());
    take(j, "exemplars", p.exemplar_ids);
    take(j, "warnings", p.warnings);
    p.clamped = j.value("clamped", std::size_t{0});
    if (auto it = j.find("layout"); it != j.end() && !it->is_null()) {
      p.layout = detail::layout_from_json(*it);
    }
    p.error = j.value("error", std::string());
    if (p.status == SampleStatus::kOk && !p.layout) {
      throw DataError(fmt::format("prediction '{}' is ok but has no layout", p.id));
    }
    return p;
  } catch (const json::exception& e) {
    throw DataError(fmt::format("prediction: {}", e.what()));
  } catch (const std::invalid_argument& e) {
    throw DataError(fmt::format("prediction: {}", e.what()));
  }
}

std::vector<PredictionRecord> read_predictions(const std::filesystem::path& path) {
  std::vector<PredictionRecord> out;
  for_each_line(path, [&](const std::string& line) { out.push_back(prediction_from_json(line)); });
  return out;
}

void write_predictions(const std::filesystem::path& path,
                       const std::vector<PredictionRecord>& predictions) {
  std::string text;
  for (const auto& p : predictions) {
    text += to_json_line(p);
    text += '\n';
  }
  write_text_file(path, text);
}

// ---- plan ----------------------------------------------------------------

AssembledPrompt assemble_for(const BenchItem& item, const SupportSet& support,
                             const RunConfig& cfg, const EmbeddingProvider* embedder,
                             RetrievalCache* cache, const Layout* prefix, ExemplarSet* chosen) {
  PromptConfig pc;
  pc.dialect_spec = cfg.dialect_spec();
  pc.canvas = cfg.canvas;
  pc.include_instruction = cfg.include_instruction;
  pc.allow_zero_shot = cfg.selection.k == 0;
  pc.vocabulary = vocabulary_for(cfg.task, support);
  if (prefix != nullptr) pc.completion_prefix = *prefix;
  pc.char_budget = cfg.char_budget;

  ExemplarSet exemplars;
  if (cfg.selection.k > 0) {
    SelectionPolicy policy = cfg.selection;
    policy.k = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(policy.k),
                                                      support.size()));
    if (policy.k == 0) throw DataError("support set is empty");
    exemplars = cache != nullptr ? cache->select(item.condition, support, policy, embedder)
                                 : select(item.condition, support, policy, embedder);
  }
  AssembledPrompt prompt = build(item.condition, exemplars, pc);
  if (chosen != nullptr) *chosen = std::move(exemplars);
  return prompt;
}

namespace {

bool is_fatal(const BackendError& e) {
  return e.kind() == BackendError::Kind::kAuth || e.kind() == BackendError::Kind::kConfig;
}

struct FatalStop {
  std::string message;
};

std::vector<PredictionRecord> plan_one(const BenchItem& item, const SupportSet& support,
                                       Backend& backend, const RunConfig& cfg,
                                       const PlanOptions& opts,
                                       const EmbeddingProvider* embedder) {
  const Layout* prefix = nullptr;
  if (opts.prefixes != nullptr) {
    if (auto it = opts.prefixes->find(item.id); it != opts.prefixes->end()) prefix = &it->second;
  }
  ExemplarSet chosen;
  AssembledPrompt prompt;
  try {
    prompt = assemble_for(item, support, cfg, embedder, opts.cache, prefix, &chosen);
  } catch (const std::invalid_argument& e) {
    throw DataError(fmt::format("record '{}': {}", item.id, e.what()));
  }
  std::vector<std::string> ids;
  for (const auto& ex : chosen.items) ids.push_back(ex.id);

  std::vector<PredictionRecord> out;
  std::vector<std::string> completions;
  try {
    completions = backend.complete(prompt, cfg.params);
  } catch (const BackendError& e) {
    if (is_fatal(e)) throw FatalStop{e.what()};
    for (int s = 0; s < cfg.params.n_samples; ++s) {
      PredictionRecord p;
      p.id = item.id;
      p.sample = s;
      p.status = SampleStatus::kBackendError;
      p.exemplar_ids = ids;
      p.error = e.what();
      out.push_back(std::move(p));
    }
    return out;
  }

  const DialectSpec spec = cfg.dialect_spec();
  for (std::size_t s = 0; s < completions.size(); ++s) {
    PredictionRecord p;
    p.id = item.id;
    p.sample = static_cast<int>(s);
    p.completion_hash = hex64(fnv1a64(completions[s]));
    p.exemplar_ids = ids;
    ParseOutcome parsed = parse(completions[s], spec, cfg.canvas);
    for (const auto& w : parsed.warnings) p.warnings.emplace_back(to_string(w.kind));
    if (parsed.failed) {
      p.status = SampleStatus::kParseFailed;
      out.push_back(std::move(p));
      continue;
    }
    Layout l;
    l.dialect = spec.dialect;
    l.canvas = cfg.canvas;
    l.condition = item.condition;
    if (prefix != nullptr) l.elements = prefix->elements;
    for (auto& el : parsed.layout.elements) {
      if (auto* e2 = std::get_if<Element2D>(&el)) {
        ClampResult c = clamp_to_canvas(*e2, cfg.canvas);
        if (c.clamped) ++p.clamped;
        l.elements.emplace_back(std::move(c.element));
      } else {
        l.elements.push_back(std::move(el));
      }
    }
    p.layout = std::move(l);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

PlanResult run_plan(const std::vector<BenchItem>& bench, const SupportSet& support,
                    Backend& backend, const RunConfig& cfg, const PlanOptions& opts) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  HashedBagOfWordsEmbedder fallback;
  const EmbeddingProvider* embedder = opts.embedder != nullptr ? opts.embedder : &fallback;

  std::vector<std::optional<std::vector<PredictionRecord>>> slots(bench.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex err_mu;
  std::optional<std::string> fatal;
  std::exception_ptr data_error;

  auto worker = [&] {
    while (!stop.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= bench.size()) return;
      try {
        slots[i] = plan_one(bench[i], support, backend, cfg, opts, embedder);
      } catch (const FatalStop& f) {
        std::lock_guard lock(err_mu);
        if (!fatal) fatal = f.message;
        stop = true;
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (!data_error) data_error = std::current_exception();
        stop = true;
      }
    }
  };

  const int n_workers =
      static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(cfg.jobs), bench.size()));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }
  if (data_error) std::rethrow_exception(data_error);

  PlanResult result;
  for (auto& slot : slots) {
    if (!slot) continue;
    ++result.records_done;
    for (auto& p : *slot) result.predictions.push_back(std::move(p));
  }
  result.fatal_error = fatal;
  result.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

// ---- eval ----------------------------------------------------------------

namespace {

std::string id_list(const std::vector<std::string>& ids) {
  constexpr std::size_t kShown = 10;
  std::vector<std::string> head(ids.begin(), ids.begin() + std::min(ids.size(), kShown));
  std::string s = fmt::format("{}", fmt::join(head, ", "));
  if (ids.size() > kShown) s += fmt::format(", ... ({} total)", ids.size());
  return s;
}

const std::vector<std::string>& subtype_order() {
  static const std::vector<std::string> kOrder = {"single_category", "two_categories",
                                                  "comparison", "natural"};
  return kOrder;
}

void sort_rows(std::vector<ReportRow>& rows) {
  auto rank = [](const std::string& s) {
    const auto& o = subtype_order();
    return std::find(o.begin(), o.end(), s) - o.begin();
  };
  std::stable_sort(rows.begin(), rows.end(), [&](const ReportRow& a, const ReportRow& b) {
    return std::make_pair(rank(a.label), a.label) < std::make_pair(rank(b.label), b.label);
  });
}

struct Scored {
  const BenchItem* item;
  const PredictionRecord* pred;
};

void score_numerical(const std::vector<Scored>& scored, const std::set<std::string>& vocab,
                     EvalReport& report) {
  std::map<std::string, std::vector<NumericalSample>> by_subtype;
  std::map<std::string, std::set<std::string>> ids;
  std::vector<NumericalSample> all, counted;
  for (const auto& s : scored) {
    NumericalSample n;
    n.gt = s.item->gt_counts;
    if (s.pred->layout) n.prediction = count_categories(*s.pred->layout);
    if (s.item->comparison) {
      n.comparison = NumericalSample::Comparison{s.item->comparison->cat_a,
                                                 s.item->comparison->cat_b,
                                                 s.item->comparison->relation};
    } else {
      counted.push_back(n);
    }
    by_subtype[s.item->subtype].push_back(n);
    ids[s.item->subtype].insert(s.item->id);
    all.push_back(std::move(n));
  }
  auto row_for = [&](const std::string& label, const std::vector<NumericalSample>& v,
                     std::size_t records, bool with_pr) {
    const NumericalSummary sum = summarize_numerical(v, vocab);
    ReportRow r;
    r.label = label;
    r.records = records;
    r.samples = sum.samples;
    r.parse_failures = sum.parse_failures;
    r.empty_predictions = sum.empty_predictions;
    r.out_of_vocabulary = sum.out_of_vocabulary;
    r.accuracy = sum.accuracy;
    if (with_pr) {
      r.precision = sum.precision;
      r.recall = sum.recall;
    }
    return r;
  };
  for (const auto& [sub, v] : by_subtype) {
    const bool comparison = std::all_of(v.begin(), v.end(), [](const auto& n) {
      return n.comparison.has_value();
    });
    report.rows.push_back(row_for(sub, v, ids[sub].size(), !comparison));
  }
  sort_rows(report.rows);
  report.overall = row_for("overall", all, report.records, false);
  if (!counted.empty()) {
    const NumericalSummary pr = summarize_numerical(counted, vocab);
    report.overall.precision = pr.precision;
    report.overall.recall = pr.recall;
  }
}

void score_spatial(const std::vector<Scored>& scored, EvalReport& report) {
  std::map<std::string, std::vector<SpatialSample>> by_subtype;
  std::map<std::string, std::set<std::string>> ids;
  std::vector<SpatialSample> all;
  for (const auto& s : scored) {
    if (!s.item->spatial) {
      throw DataError(fmt::format("record '{}' has no spatial relation label", s.item->id));
    }
    SpatialSample sp;
    sp.gt = s.item->spatial->relation;
    sp.cat_a = s.item->spatial->cat_a;
    sp.cat_b = s.item->spatial->cat_b;
    sp.prediction = s.pred->layout;
    by_subtype[s.item->subtype].push_back(sp);
    ids[s.item->subtype].insert(s.item->id);
    all.push_back(std::move(sp));
  }
  auto row_for = [](const std::string& label, const std::vector<SpatialSample>& v,
                    std::size_t records) {
    ReportRow r;
    r.label = label;
    r.records = records;
    r.samples = v.size();
    r.parse_failures = static_cast<std::size_t>(
        std::count_if(v.begin(), v.end(), [](const auto& s) { return !s.prediction; }));
    r.accuracy = spatial_accuracy(v);
    return r;
  };
  for (const auto& [sub, v] : by_subtype) report.rows.push_back(row_for(sub, v, ids[sub].size()));
  sort_rows(report.rows);
  report.overall = row_for("overall", all, report.records);
}

void score_scenes(const std::vector<Scored>& scored, const EvalOptions& opts,
                  EvalReport& report) {
  SceneReport scene;
  std::vector<bool> violates;
  CountVector gt_counts, pred_counts;
  std::set<std::string> gt_seen;
  std::vector<double> min_diffs;
  std::map<std::string, std::size_t> support_index;
  if (opts.support != nullptr) {
    for (std::size_t i = 0; i < opts.support->size(); ++i) {
      support_index.emplace((*opts.support)[i].id, i);
    }
  }
  for (const auto& s : scored) {
    if (s.item->gt_layout && gt_seen.insert(s.item->id).second) {
      for (const auto& [c, n] : count_categories(*s.item->gt_layout)) gt_counts[c] += n;
    }
    if (!s.pred->layout) continue;
    const Layout& l = *s.pred->layout;
    ++scene.scenes;
    for (const auto& [c, n] : count_categories(l)) pred_counts[c] += n;
    try {
      const FloorPlan plan = FloorPlan::pixels(s.item->condition, l.canvas);
      violates.push_back(out_of_bound(l, plan).scene_violates);
    } catch (const std::invalid_argument& e) {
      throw DataError(fmt::format("record '{}': {}", s.item->id, e.what()));
    }
    if (opts.support == nullptr || s.pred->exemplar_ids.empty()) continue;
    std::optional<double> best;
    const Layout generated = denormalize_scene(l);
    for (const auto& id : s.pred->exemplar_ids) {
      auto it = support_index.find(id);
      if (it == support_index.end()) continue;
      const Layout& ex = (*opts.support)[it->second].layout;
      if (ex.dialect != Dialect::kScene3d || !(ex.canvas.meters_per_canvas > 0)) continue;
      const double d = scene_difference(generated, denormalize_scene(ex));
      best = best ? std::min(*best, d) : d;
    }
    if (best) min_diffs.push_back(*best);
  }
  if (!violates.empty()) {
    std::size_t bad = static_cast<std::size_t>(std::count(violates.begin(), violates.end(), true));
    scene.out_of_bound_rate = 100.0 * static_cast<double>(bad) / static_cast<double>(violates.size());
  }
  long long gt_total = 0, pred_total = 0;
  std::set<std::string> vocab;
  for (const auto& [c, n] : gt_counts) {
    vocab.insert(c);
    gt_total += n;
  }
  for (const auto& [c, n] : pred_counts) {
    vocab.insert(c);
    pred_total += n;
  }
  if (gt_total > 0 && pred_total > 0) {
    std::vector<std::string> support(vocab.begin(), vocab.end());
    scene.kl_divergence = kl_divergence(CategoryDistribution::from_counts(support, gt_counts),
                                        CategoryDistribution::from_counts(support, pred_counts));
  }
  if (!min_diffs.empty()) scene.duplication = duplication_histogram(min_diffs);
  report.scene = std::move(scene);
  report.overall.label = "overall";
  report.overall.records = report.records;
  report.overall.samples = report.samples;
  report.overall.parse_failures = report.parse_failures;
}

}  // namespace

EvalReport evaluate(const std::vector<PredictionRecord>& predictions,
                    const std::vector<BenchItem>& bench, Task task, const EvalOptions& opts) {
  std::map<std::string, const BenchItem*> by_id;
  for (const auto& b : bench) by_id.emplace(b.id, &b);

  std::vector<std::string> orphans;
  std::set<std::string> orphan_seen, predicted;
  for (const auto& p : predictions) {
    if (by_id.count(p.id) == 0) {
      if (orphan_seen.insert(p.id).second) orphans.push_back(p.id);
    } else {
      predicted.insert(p.id);
    }
  }
  if (!orphans.empty()) {
    throw DataError(fmt::format("predictions name {} record(s) missing from the bench: {}",
                                orphans.size(), id_list(orphans)));
  }
  if (!opts.allow_missing) {
    std::vector<std::string> missing;
    for (const auto& b : bench) {
      if (predicted.count(b.id) == 0) missing.push_back(b.id);
    }
    if (!missing.empty()) {
      throw DataError(fmt::format("{} bench record(s) have no predictions: {}", missing.size(),
                                  id_list(missing)));
    }
  }

  EvalReport report;
  report.task = task;
  report.records = predicted.size();
  std::vector<Scored> scored;
  for (const auto& p : predictions) {
    if (p.status == SampleStatus::kBackendError) {
      ++report.backend_errors;
      continue;
    }
    ++report.samples;
    if (p.status == SampleStatus::kParseFailed) ++report.parse_failures;
    scored.push_back({by_id.at(p.id), &p});
  }
  if (report.samples > 0) {
    report.parse_failure_rate =
        100.0 * static_cast<double>(report.parse_failures) / static_cast<double>(report.samples);
  }

  switch (task) {
    case Task::kNumerical: {
      std::set<std::string> vocab;
      for (const auto& b : bench) {
        for (const auto& [c, n] : b.gt_counts) vocab.insert(c);
      }
      score_numerical(scored, vocab, report);
      break;
    }
    case Task::kSpatial:
      score_spatial(scored, report);
      break;
    case Task::kBedroom:
    case Task::kLivingRoom:
      score_scenes(scored, opts, report);
      break;
    case Task::kKeypoint:
      report.overall.label = "overall";
      report.overall.records = report.records;
      report.overall.samples = report.samples;
      report.overall.parse_failures = report.parse_failures;
      break;
  }
  return report;
}

namespace {

ojson opt(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

ojson row_json(const ReportRow& r) {
  return {{"subtype", r.label},
          {"records", r.records},
          {"samples", r.samples},
          {"parse_failures", r.parse_failures},
          {"empty_predictions", r.empty_predictions},
          {"out_of_vocabulary", r.out_of_vocabulary},
          {"precision", opt(r.precision)},
          {"recall", opt(r.recall)},
          {"accuracy", opt(r.accuracy)}};
}

std::string cell(const std::optional<double>& v) { return v ? fmt::format("{:.2f}", *v) : "-"; }

}  // namespace

std::string report_to_json(const EvalReport& r) {
  ojson j;
  j["task"] = std::string(to_string(r.task));
  j["records"] = r.records;
  j["samples"] = r.samples;
  j["parse_failures"] = r.parse_failures;
  j["parse_failure_rate"] = r.parse_failure_rate;
  j["backend_errors"] = r.backend_errors;
  ojson rows = ojson::array();
  for (const auto& row : r.rows) rows.push_back(row_json(row));
  j["rows"] = std::move(rows);
  j["overall"] = row_json(r.overall);
  if (r.scene) {
    ojson s;
    s["scenes"] = r.scene->scenes;
    s["out_of_bound_rate"] = opt(r.scene->out_of_bound_rate);
    s["kl_divergence"] = opt(r.scene->kl_divergence);
    if (r.scene->duplication) {
      const auto& h = *r.scene->duplication;
      s["duplication"] = {{"duplication", h.counts[0]},
                          {"modification", h.counts[1]},
                          {"generation", h.counts[2]},
                          {"min_differences", h.sorted_differences}};
    } else {
      s["duplication"] = nullptr;
    }
    s["fid"] = opt(r.scene->fid);
    j["scene"] = std::move(s);
  } else {
    j["scene"] = nullptr;
  }
  return j.dump(2) + "\n";
}

std::string report_table(const EvalReport& r) {
  std::string out = fmt::format(
      "task: {}  records: {}  samples: {}  parse failures: {} ({:.2f}%)  backend errors: {}\n",
      to_string(r.task), r.records, r.samples, r.parse_failures, r.parse_failure_rate,
      r.backend_errors);
  out += fmt::format("{:<16} {:>8} {:>8} {:>10} {:>10} {:>10}\n", "subtype", "records", "samples",
                     "precision", "recall", "accuracy");
  auto line = [&](const ReportRow& row) {
    out += fmt::format("{:<16} {:>8} {:>8} {:>10} {:>10} {:>10}\n", row.label, row.records,
                       row.samples, cell(row.precision), cell(row.recall), cell(row.accuracy));
  };
  for (const auto& row : r.rows) line(row);
  line(r.overall);
  if (r.scene) {
    out += fmt::format("scenes: {}  out-of-bound rate: {}%  KL divergence: {}\n", r.scene->scenes,
                       cell(r.scene->out_of_bound_rate),
                       r.scene->kl_divergence ? fmt::format("{:.4f}", *r.scene->kl_divergence)
                                              : "-");
    if (r.scene->duplication) {
      const auto& c = r.scene->duplication->counts;
      out += fmt::format("duplication / modification / generation: {} / {} / {}\n", c[0], c[1],
                         c[2]);
    }
  }
  return out;
}

// ---- manifest ------------------------------------------------------------

RunManifest manifest_for(const std::string& command, const RunConfig& cfg,
                         const std::string& backend_identity, const PlanResult& result) {
  RunManifest m;
  m.command = command;
  m.config = cfg;
  m.backend_identity = backend_identity;
  for (const auto& p : result.predictions) {
    if (m.records.empty() || m.records.back().first != p.id) m.records.emplace_back(p.id, std::vector<SampleStatus>{});
    m.records.back().second.push_back(p.status);
  }
  m.fatal_error = result.fatal_error;
  m.elapsed_ms = result.elapsed_ms;
  return m;
}

std::string manifest_to_json(const RunManifest& m) {
  ojson j;
  j["command"] = m.command;
  j["config"] = ojson::parse(run_config_to_json(m.config));
  j["seed"] = m.config.params.seed;
  j["backend"] = m.backend_identity;
  j["inputs"] = m.inputs;
  j["outputs"] = m.outputs;
  std::array<std::size_t, 3> totals{};
  ojson records = ojson::array();
  for (const auto& [id, statuses] : m.records) {
    std::vector<std::string> names;
    for (auto s : statuses) {
      names.emplace_back(to_string(s));
      ++totals[static_cast<std::size_t>(s)];
    }
    records.push_back({{"id", id}, {"status", names}});
  }
  j["status_counts"] = {{"ok", totals[0]}, {"parse_failed", totals[1]}, {"backend_error", totals[2]}};
  j["records"] = std::move(records);
  j["fatal_error"] = m.fatal_error ? ojson(*m.fatal_error) : ojson(nullptr);
  // Wall-clock only; everything above is reproducible.
  j["timing"] = {{"elapsed_ms", m.elapsed_ms}};
  return j.dump(2) + "\n";
}

}  // namespace layoutplan
