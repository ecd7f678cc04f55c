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


#include "fixtures.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <vector>

#include <unistd.h>

#include <fmt/format.h>
#include <json.hpp>

#include "layoutplan/embedding.h"
#include "layoutplan/eval_2d.h"

namespace layoutplan::testing {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

const std::vector<std::string>& coco_categories() {
  static const std::vector<std::string> kNames = {
      "person",        "bicycle",      "car",           "motorcycle",    "airplane",
      "bus",           "train",        "truck",         "boat",          "traffic light",
      "fire hydrant",  "stop sign",    "parking meter", "bench",         "bird",
      "cat",           "dog",          "horse",         "sheep",         "cow",
      "elephant",      "bear",         "zebra",         "giraffe",       "backpack",
      "umbrella",      "handbag",      "tie",           "suitcase",      "frisbee",
      "skis",          "snowboard",    "sports ball",   "kite",          "baseball bat",
      "baseball glove", "skateboard",  "surfboard",     "tennis racket", "bottle",
      "wine glass",    "cup",          "fork",          "knife",         "spoon",
      "bowl",          "banana",       "apple",         "sandwich",      "orange",
      "broccoli",      "carrot",       "hot dog",       "pizza",         "donut",
      "cake",          "chair",        "couch",         "potted plant",  "bed",
      "dining table",  "toilet",       "tv",            "laptop",        "mouse",
      "remote",        "keyboard",     "cell phone",    "microwave",     "oven",
      "toaster",       "sink",         "refrigerator",  "book",          "clock",
      "vase",          "scissors",     "teddy bear",    "hair drier",    "toothbrush"};
  return kNames;
}

namespace {

// Removes every temp dir at process exit. LAYOUTPLAN_KEEP_TEMP keeps them
// for a post-mortem.
struct TempDirs {
  std::mutex mu;
  std::vector<fs::path> dirs;
  ~TempDirs() {
    if (std::getenv("LAYOUTPLAN_KEEP_TEMP") != nullptr) return;
    std::error_code ec;
    for (const auto& d : dirs) fs::remove_all(d, ec);
  }
};

TempDirs& temp_dirs() {
  static TempDirs t;
  return t;
}

}  // namespace

fs::path temp_dir(std::string_view tag) {
  static std::atomic<int> counter{0};
  const fs::path dir = fs::temp_directory_path() /
                       fmt::format("layoutplan-{}-{}-{}", tag, static_cast<long long>(::getpid()),
                                   counter.fetch_add(1));
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto& t = temp_dirs();
  std::lock_guard lock(t.mu);
  t.dirs.push_back(dir);
  return dir;
}

fs::path write_file(const fs::path& path, std::string_view text) {
  write_text_file(path, text);
  return path;
}

CanvasSpec canvas_for(Dialect d) {
  return d == Dialect::kScene3d ? CanvasSpec::scene_default() : CanvasSpec::image_default();
}

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

const std::string& pick(std::mt19937_64& rng, const std::vector<std::string>& v) {
  return v[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(v.size()) - 1))];
}

}  // namespace

Layout random_layout(const DialectSpec& spec, std::mt19937_64& rng) {
  Layout l;
  l.dialect = spec.dialect;
  l.canvas = canvas_for(spec.dialect);
  const double w = l.canvas.width_px, h = l.canvas.height_px;
  const int n = uniform_int(rng, 0, 6);
  for (int i = 0; i < n; ++i) {
    switch (spec.dialect) {
      case Dialect::kImage2d: {
        Element2D e;
        e.category = pick(rng, coco_categories());
        e.left = uniform(rng, 0, w);
        e.top = uniform(rng, 0, h);
        e.width = uniform(rng, 0, w - e.left);
        e.height = uniform(rng, 0, h - e.top);
        l.elements.emplace_back(e);
        break;
      }
      case Dialect::kScene3d: {
        Element3D e;
        e.category = pick(rng, coco_categories());
        e.length = uniform(rng, 0, w / 2);
        e.width = uniform(rng, 0, h / 2);
        e.height = uniform(rng, 0, w / 2);
        e.left = uniform(rng, -w / 2, w / 2);
        e.top = uniform(rng, -h / 2, h / 2);
        e.depth = uniform(rng, 0, w / 4);
        e.orientation_deg = uniform_int(rng, 0, 359);
        l.elements.emplace_back(e);
        break;
      }
      case Dialect::kKeypoint: {
        KeypointSet k;
        k.person_index = i + 1;
        for (auto& node : k.nodes) {
          if (uniform_int(rng, 0, 9) < 3) continue;  // invisible
          node.left = uniform(rng, 1, w);
          node.top = uniform(rng, 1, h);
        }
        l.elements.emplace_back(k);
        break;
      }
    }
  }
  return snap_to_dialect(l, spec);
}

// ---- COCO JSON -----------------------------------------------------------

namespace {

std::map<std::string, int> category_ids(const std::vector<AnnotationRecord>& records) {
  std::map<std::string, int> ids;
  int next = 1;
  for (const auto& c : coco_categories()) ids.emplace(c, next++);
  for (const auto& r : records) {
    for (const auto& b : r.boxes) {
      if (ids.emplace(b.category, next).second) ++next;
    }
  }
  return ids;
}

json images_json(const std::vector<AnnotationRecord>& records) {
  json images = json::array();
  for (const auto& r : records) {
    images.push_back({{"id", r.image_id},
                      {"width", r.image_width},
                      {"height", r.image_height},
                      {"file_name", fmt::format("{:012}.jpg", r.image_id)}});
  }
  return images;
}

}  // namespace

std::string coco_instances_json(const std::vector<AnnotationRecord>& records) {
  const auto ids = category_ids(records);
  json annotations = json::array();
  long long ann_id = 1;
  for (const auto& r : records) {
    for (const auto& b : r.boxes) {
      json seg = json::array();
      seg.push_back({b.left, b.top, b.left + b.width, b.top, b.left + b.width, b.top + b.height});
      annotations.push_back({{"id", ann_id++},
                             {"image_id", r.image_id},
                             {"category_id", ids.at(b.category)},
                             {"segmentation", std::move(seg)},
                             {"area", b.width * b.height},
                             {"bbox", {b.left, b.top, b.width, b.height}},
                             {"iscrowd", b.crowd ? 1 : 0}});
    }
  }
  json categories = json::array();
  for (const auto& [name, id] : ids) {
    categories.push_back({{"id", id}, {"name", name}, {"supercategory", "thing"}});
  }
  json j;
  j["info"] = {{"description", "synthetic"}};
  j["images"] = images_json(records);
  j["annotations"] = std::move(annotations);
  j["categories"] = std::move(categories);
  return j.dump();
}

std::string coco_captions_json(const std::vector<AnnotationRecord>& records) {
  json annotations = json::array();
  long long ann_id = 1;
  for (const auto& r : records) {
    for (const auto& c : r.captions) {
      annotations.push_back({{"id", ann_id++}, {"image_id", r.image_id}, {"caption", c}});
    }
  }
  json j;
  j["images"] = images_json(records);
  j["annotations"] = std::move(annotations);
  return j.dump();
}

std::vector<AnnotationRecord> random_annotations(std::mt19937_64& rng, int n_images) {
  static const std::vector<std::string> kPhrases = {"to the left of", "to the right of",
                                                    "on top of", "under", "below", "next to"};
  std::vector<AnnotationRecord> out;
  for (int i = 0; i < n_images; ++i) {
    AnnotationRecord r;
    r.image_id = 1000 + i;
    r.image_width = uniform_int(rng, 200, 800);
    r.image_height = uniform_int(rng, 200, 800);
    auto box = [&](const std::string& cat, bool crowd = false) {
      AnnotationBox b;
      b.category = cat;
      b.width = uniform(rng, 2, r.image_width / 2.0);
      b.height = uniform(rng, 2, r.image_height / 2.0);
      b.left = uniform(rng, 0, r.image_width - b.width);
      b.top = uniform(rng, 0, r.image_height - b.height);
      b.crowd = crowd;
      return b;
    };
    const int kind = uniform_int(rng, 0, 5);
    const std::string a = pick(rng, coco_categories());
    std::string b = pick(rng, coco_categories());
    if (b == a) b = a == "dog" ? "cat" : "dog";
    switch (kind) {
      case 0: {  // numerical
        const int na = uniform_int(rng, 1, 5);
        const int nb = uniform_int(rng, 0, 5);
        for (int k = 0; k < na; ++k) r.boxes.push_back(box(a));
        for (int k = 0; k < nb; ++k) r.boxes.push_back(box(b));
        r.captions.push_back(fmt::format("{} {} near the {}.", number_word(na), pluralize(a),
                                         nb > 0 ? b : std::string("wall")));
        r.captions.push_back(fmt::format("A photo of some {}.", pluralize(a)));
        break;
      }
      case 1: {  // two objects, phrase caption
        r.boxes.push_back(box(a));
        r.boxes.push_back(box(b));
        const std::string& ph = pick(rng, kPhrases);
        if (uniform_int(rng, 0, 1) == 0) {
          r.captions.push_back(fmt::format("A {} {} a {}.", a, ph, b));
        } else {
          r.captions.push_back(fmt::format("The {} is {} the {}", b, ph, a));
        }
        break;
      }
      case 2:  // crowd
        r.boxes.push_back(box(a));
        r.boxes.push_back(box(a, true));
        r.captions.push_back(fmt::format("Two {} in a crowd.", pluralize(a)));
        break;
      case 3: {  // many categories
        for (int k = 0; k < 4; ++k) r.boxes.push_back(box(pick(rng, coco_categories())));
        r.captions.push_back("A busy scene.");
        break;
      }
      case 4:  // no boxes
        r.captions.push_back("An empty room.");
        break;
      default:  // too many
        for (int k = 0; k < 7; ++k) r.boxes.push_back(box(a));
        r.captions.push_back(fmt::format("Many {}.", pluralize(a)));
        break;
    }
    out.push_back(std::move(r));
  }
  return out;
}

// ---- synthetic benchmark -------------------------------------------------

double relation_margin(const Element2D& reference, const Element2D& subject) {
  const double dx = subject.center_x() - reference.center_x();
  const double dy = reference.center_y() - subject.center_y();
  return std::abs(std::abs(dx) - std::abs(dy));
}

namespace {

// Tracks captions already in the pool so a new one never embeds identically.
class CaptionPool {
 public:
  bool add(const std::string& text) {
    Embedding e = embedder_.embed(text);
    for (const auto& seen : seen_) {
      if (seen == e) return false;
    }
    seen_.push_back(std::move(e));
    return true;
  }

 private:
  HashedBagOfWordsEmbedder embedder_;
  std::vector<Embedding> seen_;
};

// Boxes on a 640 px image at multiples of 10 land on whole canvas pixels.
AnnotationBox grid_box(std::mt19937_64& rng, const std::string& cat) {
  AnnotationBox b;
  b.category = cat;
  b.width = 10.0 * uniform_int(rng, 4, 12);
  b.height = 10.0 * uniform_int(rng, 4, 12);
  b.left = 10.0 * uniform_int(rng, 4, static_cast<int>(60 - b.width / 10));
  b.top = 10.0 * uniform_int(rng, 4, static_cast<int>(60 - b.height / 10));
  return b;
}

}  // namespace

SyntheticBench make_synthetic_bench(std::uint64_t seed, int jitter_px) {
  std::mt19937_64 rng(seed);
  SyntheticBench out;
  out.jitter_px = jitter_px;
  CaptionPool pool;
  std::int64_t image_id = 1;
  std::vector<std::string> cats = coco_categories();
  std::shuffle(cats.begin(), cats.end(), rng);
  std::size_t next_cat = 0;
  auto fresh = [&]() -> const std::string& { return cats.at(next_cat++ % cats.size()); };

  auto record = [&](std::vector<std::pair<std::string, int>> counts,
                    std::vector<std::string> captions) {
    AnnotationRecord r;
    r.image_id = image_id++;
    r.image_width = 640;
    r.image_height = 640;
    r.captions = std::move(captions);
    for (const auto& [cat, n] : counts) {
      for (int k = 0; k < n; ++k) r.boxes.push_back(grid_box(rng, cat));
    }
    return r;
  };

  auto take = [&](PromptRecord p) {
    if (!pool.add(p.text)) return false;
    out.numerical.push_back(std::move(p));
    return true;
  };

  // Single category.
  for (int added = 0; added < 8;) {
    auto r = record({{fresh(), uniform_int(rng, 1, 5)}}, {});
    added += take(make_template_prompts(r).at(0));
  }
  // Two categories; the first seven also give a comparison prompt.
  for (int added = 0; added < 8;) {
    const std::string a = fresh(), b = fresh();
    auto r = record({{a, uniform_int(rng, 1, 5)}, {b, uniform_int(rng, 1, 5)}}, {});
    auto prompts = make_template_prompts(r);
    if (!take(prompts.at(0))) continue;
    ++added;
    if (added <= 7) take(prompts.at(1));
  }
  // Natural captions.
  for (int added = 0; added < 7;) {
    const std::string a = fresh(), b = fresh();
    const int na = uniform_int(rng, 1, 5), nb = uniform_int(rng, 1, 5);
    auto r = record({{a, na}, {b, nb}},
                    {fmt::format("{} {} resting beside {} {} on a sunny afternoon",
                                 number_word(na), na == 1 ? a : pluralize(a), number_word(nb),
                                 nb == 1 ? b : pluralize(b))});
    if (auto p = extract_natural_numerical(r)) added += take(std::move(*p));
  }

  // Spatial: alternate robust and fragile margins.
  const int threshold = 6 * jitter_px;
  for (int i = 0; out.spatial.size() < 20; ++i) {
    const std::string a = pick(rng, coco_categories());
    const std::string b = pick(rng, coco_categories());
    if (a == b) continue;
    const bool robust = out.spatial.size() % 2 == 0;
    const int far = robust ? 30 : 20;
    const int margin = robust ? std::max(20, threshold + 2) : uniform_int(rng, 1, 8);
    const int near = far - margin;
    const int sign = uniform_int(rng, 0, 1) == 0 ? 1 : -1;
    int dx = 0, dy = 0;
    switch (uniform_int(rng, 0, 3)) {
      case 0: dx = -far; dy = sign * near; break;  // left
      case 1: dx = far; dy = sign * near; break;   // right
      case 2: dy = far; dx = sign * near; break;   // above
      default: dy = -far; dx = sign * near; break; // below
    }
    // Canvas centers; boxes are even-sized so centers stay whole.
    const int ax = 32 - dx / 2, ay = 32 + dy / 2;
    const int bx = ax + dx, by = ay - dy;
    const int half_a = uniform_int(rng, 2, 5), half_b = uniform_int(rng, 2, 5);
    AnnotationRecord r;
    r.image_id = image_id++;
    r.image_width = 640;
    r.image_height = 640;
    r.boxes.push_back({a, 10.0 * (ax - half_a), 10.0 * (ay - half_a), 20.0 * half_a,
                       20.0 * half_a, false});
    r.boxes.push_back({b, 10.0 * (bx - half_b), 10.0 * (by - half_b), 20.0 * half_b,
                       20.0 * half_b, false});
    auto p = make_spatial_template(r);
    if (!p || !pool.add(p->text)) continue;
    const auto& ea = std::get<Element2D>(p->gt_layout.elements[0]);
    const auto& eb = std::get<Element2D>(p->gt_layout.elements[1]);
    if (relation_margin(ea, eb) > threshold) ++out.robust_spatial;
    out.spatial.push_back(std::move(*p));
  }
  out.spatial_accuracy_floor =
      100.0 * static_cast<double>(out.robust_spatial) / static_cast<double>(out.spatial.size());

  for (const auto* set : {&out.numerical, &out.spatial}) {
    for (const auto& p : *set) out.support.push_back({"support-" + p.id, p.gt_layout});
  }
  // Distractors that share no caption with the bench.
  for (int added = 0; added < 10;) {
    auto r = record({{pick(rng, coco_categories()), uniform_int(rng, 1, 5)}}, {});
    auto p = make_template_prompts(r).at(0);
    if (!pool.add(p.text)) continue;
    out.support.push_back({"distractor-" + std::to_string(added), p.gt_layout});
    ++added;
  }
  return out;
}

}  // namespace layoutplan::testing
