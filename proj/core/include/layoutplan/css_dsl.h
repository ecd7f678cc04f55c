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

// CSS-style layout text. Each element is one line with the category as the
// selector:
//
//   teddy bear {width: 32px; height: 45px; left: 31px; top: 9px; }
//
// Two style flags produce the ablation formats: without CSS the line becomes
// "teddy bear: 32, 45, 31, 9", and without normalization the values are
// canvas fractions with two decimals ("teddy bear {width: 0.50; ...; }").
// The keypoint dialect groups 17 node lines under a "person#k:" header.
// The grammar is written out in docs/dsl_grammar.md.

#ifndef LAYOUTPLAN_CSS_DSL_H_
#define LAYOUTPLAN_CSS_DSL_H_

#include <string>
#include <string_view>
#include <vector>

#include "layoutplan/model.h"

namespace layoutplan {

struct StyleFlags {
  bool use_css = true;
  bool use_normalized_ints = true;

  bool operator==(const StyleFlags&) const = default;
};

enum class UnitSuffix { kNone, kPx, kDegrees };

struct DialectSpec {
  Dialect dialect = Dialect::kImage2d;
  std::vector<std::string> property_order;
  StyleFlags style;

  static DialectSpec make(Dialect d, StyleFlags style = {});

  QuantizeMode quantize_mode() const {
    return style.use_normalized_ints ? QuantizeMode::kIntegerPx : QuantizeMode::kFloatFraction;
  }
  // Unit written after a property's value in this style.
  UnitSuffix unit_for(std::string_view property) const;

  bool operator==(const DialectSpec&) const = default;
};

std::string_view unit_text(UnitSuffix u);

enum class WarningKind {
  kMissingUnit,
  kUnexpectedUnit,
  kMissingTrailingSemicolon,
  kSeparatorTypo,
  kReorderedProperties,
  kUnknownProperty,
  kDuplicateProperty,
  kMissingProperty,      // element dropped
  kBadValue,             // element dropped
  kUnterminatedBlock,
  kStyleMismatch,        // CSS line in a plain dialect or vice versa
  kUnparsableLine,
  kSkippedPreamble,
  kTrailingText,         // parsing stopped before the end of the text
  kUnknownKeypointNode,  // node dropped
  kDuplicateKeypointNode,
  kMissingKeypointNodes,  // filled in as invisible
  kImplicitPerson,
};

std::string_view to_string(WarningKind k);

struct ParseWarning {
  WarningKind kind;
  int line = 0;  // 1-based line in the completion text
  std::string detail;
};

struct ParseOutcome {
  Layout layout;
  std::vector<ParseWarning> warnings;
  bool failed = true;

  bool has_warning(WarningKind k) const;
};

/// Renders `layout` one element per line (no trailing newline). The empty
/// layout renders as "". Throws std::invalid_argument if the layout's dialect
/// differs from `spec`.
std::string serialize(const Layout& layout, const DialectSpec& spec);

/// Serializes a single element the way `serialize` would. Keypoint sets
/// render as a header line followed by 17 node lines.
std::string serialize_element(const Element& e, const DialectSpec& spec,
                              const CanvasSpec& canvas);

/// Recovers elements from arbitrary completion text. Never throws.
///
/// Values come back in canvas pixels whatever the style. Leading blocks with
/// no elements are skipped; after the first element, parsing stops at the
/// first blank-line-delimited block without one, or at a "Prompt:" line.
ParseOutcome parse(std::string_view text, const DialectSpec& spec, const CanvasSpec& canvas);

/// Rounds geometry onto the grid the style can express, in pixels. For such
/// layouts parse(serialize(l)) reproduces l exactly.
Layout snap_to_dialect(const Layout& layout, const DialectSpec& spec);

/// True when parse(serialize(layout)) yields element-wise identical elements.
bool roundtrip_check(const Layout& layout, const DialectSpec& spec);

}  // namespace layoutplan

#endif  // LAYOUTPLAN_CSS_DSL_H_
