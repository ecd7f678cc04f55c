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


#include "layoutplan/bench_builder.h"

#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "layoutplan/errors.h"

namespace layoutplan {
namespace {

AnnotationRecord image(std::int64_t id, std::vector<AnnotationBox> boxes,
                       std::vector<std::string> captions = {}) {
  AnnotationRecord r;
  r.image_id = id;
  r.image_width = 640;
  r.image_height = 640;
  r.boxes = std::move(boxes);
  r.captions = std::move(captions);
  return r;
}

TEST(BenchBuilderTest, Words) {
  EXPECT_EQ(number_word(1), "one");
  EXPECT_EQ(number_word(5), "five");
  EXPECT_THROW(number_word(6), std::invalid_argument);
  EXPECT_EQ(pluralize("giraffe"), "giraffes");
  EXPECT_EQ(pluralize("person"), "people");
  EXPECT_EQ(pluralize("bus"), "buses");
  EXPECT_EQ(pluralize("wine glass"), "wine glasses");
  EXPECT_EQ(pluralize("teddy bear"), "teddy bears");
  EXPECT_EQ(pluralize("sheep"), "sheep");
  EXPECT_EQ(pluralize("butterfly"), "butterflies");
  EXPECT_EQ(pluralize("toy"), "toys");
  EXPECT_EQ(article("apple"), "an");
  EXPECT_EQ(article("dog"), "a");
}

TEST(BenchBuilderTest, CountsSkipCrowdBoxes) {
  auto r = image(1, {{"Dog", 0, 0, 10, 10}, {"dog", 0, 0, 10, 10}, {"dog", 0, 0, 5, 5, true}});
  EXPECT_EQ(box_counts(r), (CountVector{{"dog", 2}}));
  // Crowd makes the record ineligible for counting prompts.
  EXPECT_TRUE(filter_numerical({r}).empty());
}

TEST(BenchBuilderTest, RescaleRoundsToCanvas) {
  auto r = image(1, {{"dog", 105, 200, 64, 330}});
  auto l = rescale_boxes(r, CanvasSpec{64, 64, 0}, "cap");
  // 640 px -> 64 px: divide by 10 and round: 10.5 -> 11, 20, 6.4 -> 6, 33.
  EXPECT_EQ(std::get<Element2D>(l.elements[0]), (Element2D{"dog", 11, 20, 6, 33}));
  EXPECT_EQ(l.condition.text, "cap");
}

TEST(BenchBuilderTest, FilterNumerical) {
  std::vector<AnnotationRecord> rs = {
      image(1, {{"dog", 0, 0, 1, 1}}),
      image(2, {{"dog", 0, 0, 1, 1}, {"cat", 0, 0, 1, 1}, {"car", 0, 0, 1, 1}}),
      image(3, std::vector<AnnotationBox>(6, {"dog", 0, 0, 1, 1})),
      image(4, {}),
  };
  auto kept = filter_numerical(rs);
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0].image_id, 1);
}

TEST(BenchBuilderTest, TemplatePrompts) {
  auto single = make_template_prompts(image(1, {{"giraffe", 0, 0, 10, 10}, {"giraffe", 20, 0, 10, 10}}));
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].text, "There are two giraffes in the photo.");
  EXPECT_EQ(single[0].subtype, Subtype::kSingleCategory);

  auto one = make_template_prompts(image(2, {{"dog", 0, 0, 10, 10}}));
  EXPECT_EQ(one.at(0).text, "There is one dog in the photo.");

  auto two = make_template_prompts(image(3, {{"person", 0, 0, 10, 10},
                                             {"person", 0, 0, 10, 10},
                                             {"person", 0, 0, 10, 10},
                                             {"bus", 0, 0, 10, 10}}));
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].text, "Three people with one bus in the picture.");
  // bus sorts first; 1 bus against 3 people is fewer.
  EXPECT_EQ(two[1].text,
            "A picture of one bus with a few people, the number of buses is fewer than that of people.");
  ASSERT_TRUE(two[1].comparison.has_value());
  EXPECT_EQ(two[1].comparison->cat_a, "bus");
  EXPECT_EQ(two[1].comparison->relation, CountRelation::kFewer);

  auto equal = make_template_prompts(image(4, {{"cat", 0, 0, 1, 1}, {"dog", 0, 0, 1, 1}}));
  EXPECT_EQ(equal.at(1).text, "A picture of one cat with an equal number of dogs.");
}

TEST(BenchBuilderTest, NaturalNumerical) {
  auto r = image(1, {{"dog", 0, 0, 10, 10}, {"dog", 20, 0, 10, 10}},
                 {"A sunny day.", "Two dogs play in the park."});
  auto p = extract_natural_numerical(r);
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(p->text, "Two dogs play in the park.");
  EXPECT_EQ(p->subtype, Subtype::kNatural);
  auto none = image(2, {{"dog", 0, 0, 1, 1}}, {"A photo of a cat."});
  EXPECT_FALSE(extract_natural_numerical(none).has_value());
}

TEST(BenchBuilderTest, SpatialTemplate) {
  // dog centered at (5, 32) canvas px, cat at (45, 32): the cat is right of the dog.
  auto r = image(1, {{"dog", 0, 300, 100, 40}, {"cat", 400, 300, 100, 40}});
  auto p = make_spatial_template(r);
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(p->text, "A cat to the right of a dog.");
  EXPECT_EQ(p->gt_relation->relation, SpatialRelation::kRight);
  auto up = make_spatial_template(image(2, {{"dog", 300, 400, 40, 40}, {"apple", 300, 0, 40, 40}}));
  ASSERT_TRUE(up.has_value());
  EXPECT_EQ(up->text, "An apple above a dog.");
  EXPECT_FALSE(make_spatial_template(image(3, {{"dog", 0, 0, 1, 1}, {"dog", 9, 9, 1, 1}})));
}

TEST(BenchBuilderTest, SpatialNatural) {
  auto phrases = default_spatial_phrases();
  auto r = image(1, {{"dog", 0, 300, 100, 40}, {"cat", 400, 300, 100, 40}},
                 {"A cat sits to the left of a dog.", "A dog to the left of a cat."});
  // The first caption contradicts the boxes, the second matches.
  auto p = make_spatial_natural(r, phrases);
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(p->text, "A dog to the left of a cat.");
  EXPECT_EQ(p->gt_relation->cat_a, "cat");
  EXPECT_EQ(p->gt_relation->cat_b, "dog");
  EXPECT_EQ(p->gt_relation->relation, SpatialRelation::kLeft);
  EXPECT_TRUE(self_consistency_violations(*p).empty());
}

TEST(BenchBuilderTest, PhraseTable) {
  auto ph = parse_spatial_phrases("# c\nnext to the left of\tleft\nunder\tbelow\n");
  ASSERT_EQ(ph.size(), 2u);
  EXPECT_EQ(ph[0].phrase, "next to the left of");  // longest first
  EXPECT_THROW(parse_spatial_phrases("nonsense line"), DataError);
  EXPECT_THROW(parse_spatial_phrases("x\tbehind"), DataError);
}

TEST(BenchBuilderTest, RecordsRoundTrip) {
  auto two = make_template_prompts(image(3, {{"dog", 0, 0, 10, 10}, {"cat", 30, 30, 10, 10}}));
  auto dir = testing::temp_dir("bench_records");
  write_prompt_records(dir / "p.jsonl", two);
  auto back = read_prompt_records(dir / "p.jsonl");
  ASSERT_EQ(back.size(), two.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(to_json_line(back[i]), to_json_line(two[i]));
  }
}

TEST(BenchBuilderTest, SplitsAreSeededAndCapped) {
  std::mt19937_64 rng(1);
  auto recs = testing::random_annotations(rng, 300);
  BenchConfig cfg;
  cfg.test_caps = {{split_key(Task::kNumerical, Subtype::kSingleCategory), 5}};
  auto cands = build_candidates(recs, cfg);
  EXPECT_EQ(cands.by_subtype.size(), 6u);
  auto a = sample_split(cands, cfg);
  auto b = sample_split(cands, cfg);
  const auto key = split_key(Task::kNumerical, Subtype::kSingleCategory);
  ASSERT_EQ(a.by_subtype[key].size(),
            std::min<std::size_t>(5, cands.by_subtype[key].size()));
  for (std::size_t i = 0; i < a.by_subtype[key].size(); ++i) {
    EXPECT_EQ(a.by_subtype[key][i].id, b.by_subtype[key][i].id);
  }
  // Uncapped subtypes keep every candidate.
  const auto two = split_key(Task::kSpatial, Subtype::kTwoCategories);
  EXPECT_EQ(a.by_subtype[two].size(), cands.by_subtype[two].size());
  cfg.seed = 99;
  auto c = sample_split(cands, cfg);
  std::set<std::string> ida, idc;
  for (auto& r : a.by_subtype[key]) ida.insert(r.id);
  for (auto& r : c.by_subtype[key]) idc.insert(r.id);
  if (cands.by_subtype[key].size() > 10) EXPECT_NE(ida, idc);
}

TEST(BenchBuilderTest, CandidatesAreSelfConsistent) {
  std::mt19937_64 rng(2);
  auto recs = testing::random_annotations(rng, 400);
  auto cands = build_candidates(recs, BenchConfig{});
  EXPECT_GT(cands.total(), 0u);
  for (const auto& [key, list] : cands.by_subtype) {
    EXPECT_FALSE(list.empty()) << key;
    for (const auto& r : list) EXPECT_TRUE(self_consistency_violations(r).empty()) << r.id;
  }
}

TEST(BenchBuilderTest, LoadCocoAndMalformedInput) {
  std::mt19937_64 rng(4);
  auto recs = testing::random_annotations(rng, 20);
  auto dir = testing::temp_dir("coco");
  testing::write_file(dir / "inst.json", testing::coco_instances_json(recs));
  testing::write_file(dir / "caps.json", testing::coco_captions_json(recs));
  auto loaded = load_coco(dir / "inst.json", dir / "caps.json");
  ASSERT_EQ(loaded.size(), recs.size());
  EXPECT_EQ(loaded[0].boxes.size(), recs[0].boxes.size());
  EXPECT_EQ(loaded[0].captions, recs[0].captions);

  testing::write_file(dir / "bad.json", "{\"images\": [1, 2,");
  try {
    load_coco(dir / "bad.json", std::nullopt);
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("bad.json"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("byte"), std::string::npos);
  }
  EXPECT_THROW(load_coco(dir / "absent.json", std::nullopt), DataError);
}

}  // namespace
}  // namespace layoutplan
