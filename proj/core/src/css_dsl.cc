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

#include "layoutplan/css_dsl.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <stdexcept>

#include <fmt/format.h>

namespace layoutplan {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

bool istarts_with(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && iequals(s.substr(0, prefix.size()), prefix);
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// ---- property access -----------------------------------------------------

double* field(Element2D& e, std::string_view p) {
  if (p == "width") return &e.width;
  if (p == "height") return &e.height;
  if (p == "left") return &e.left;
  if (p == "top") return &e.top;
  return nullptr;
}

double* field(Element3D& e, std::string_view p) {
  if (p == "length") return &e.length;
  if (p == "width") return &e.width;
  if (p == "height") return &e.height;
  if (p == "left") return &e.left;
  if (p == "top") return &e.top;
  if (p == "depth") return &e.depth;
  if (p == "orientation") return &e.orientation_deg;
  return nullptr;
}

double* field(KeypointPos& n, std::string_view p) {
  if (p == "left") return &n.left;
  if (p == "top") return &n.top;
  return nullptr;
}

// Canvas extent a fraction-valued property is relative to; 0 for angles.
double extent_for(Dialect d, std::string_view p, const CanvasSpec& c) {
  if (p == "orientation") return 0;
  if (d == Dialect::kScene3d) return c.max_extent_px();
  if (p == "width" || p == "left") return c.width_px;
  return c.height_px;
}

// ---- value formatting ----------------------------------------------------

std::string format_value(double px, std::string_view prop, const DialectSpec& spec,
                         const CanvasSpec& canvas) {
  if (prop == "orientation") {
    const auto deg = static_cast<long long>(normalize_orientation(std::round(px)));
    return fmt::format("{}", deg);
  }
  if (spec.style.use_normalized_ints) {
    long long v = std::llround(px);
    return fmt::format("{}", v);
  }
  const double f = px / extent_for(spec.dialect, prop, canvas);
  std::string s = fmt::format("{:.2f}", f);
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string format_decls(const std::vector<std::pair<std::string_view, double>>& values,
                         const DialectSpec& spec, const CanvasSpec& canvas) {
  std::string out;
  if (spec.style.use_css) {
    out += '{';
    bool first = true;
    for (const auto& [prop, px] : values) {
      if (!first) out += ' ';
      first = false;
      out += prop;
      out += ": ";
      out += format_value(px, prop, spec, canvas);
      out += unit_text(spec.unit_for(prop));
      out += ';';
    }
    out += " }";
  } else {
    bool first = true;
    for (const auto& [prop, px] : values) {
      if (!first) out += ", ";
      first = false;
      out += format_value(px, prop, spec, canvas);
    }
  }
  return out;
}

std::string format_line(std::string_view selector,
                        const std::vector<std::pair<std::string_view, double>>& values,
                        const DialectSpec& spec, const CanvasSpec& canvas) {
  std::string out(selector);
  out += spec.style.use_css ? " " : ": ";
  out += format_decls(values, spec, canvas);
  return out;
}

// ---- line scanning -------------------------------------------------------

struct RawDecl {
  std::string name;
  double value = 0;
  std::string unit;
  bool bad = false;
};

struct RawLine {
  std::string selector;
  std::vector<RawDecl> decls;  // CSS form: named
  std::vector<RawDecl> positional;
  bool css = false;
  std::vector<ParseWarning> warnings;
};

std::optional<double> read_number(std::string_view s, std::size_t& pos) {
  std::size_t start = pos;
  std::size_t i = pos;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  std::size_t digits_start = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  }
  if (i == digits_start || (i == digits_start + 1 && s[digits_start] == '.')) return std::nullopt;
  std::string_view num = s.substr(start, i - start);
  if (!num.empty() && num.front() == '+') num.remove_prefix(1);
  double v = 0;
  auto res = std::from_chars(num.data(), num.data() + num.size(), v);
  if (res.ec != std::errc() || !std::isfinite(v)) return std::nullopt;
  pos = i;
  return v;
}

std::string read_unit(std::string_view s, std::size_t& pos) {
  std::size_t i = pos;
  while (i < s.size() && (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '%')) ++i;
  std::string unit = lower(s.substr(pos, i - pos));
  pos = i;
  return unit;
}

void skip_spaces(std::string_view s, std::size_t& pos) {
  while (pos < s.size() && is_space(s[pos])) ++pos;
}

void skip_to_separator(std::string_view s, std::size_t& pos) {
  while (pos < s.size() && s[pos] != ';' && s[pos] != '}') ++pos;
}

// Parses the declaration block that follows '{'.
void scan_css_body(std::string_view line, std::size_t pos, int lineno, RawLine& out) {
  bool closed = false;
  while (true) {
    skip_spaces(line, pos);
    if (pos >= line.size()) break;
    if (line[pos] == '}') {
      closed = true;
      ++pos;
      break;
    }
    if (line[pos] == ';' || line[pos] == ',') {
      ++pos;
      continue;
    }
    std::size_t name_start = pos;
    while (pos < line.size() &&
           (std::isalpha(static_cast<unsigned char>(line[pos])) || line[pos] == '_' ||
            line[pos] == '-')) {
      ++pos;
    }
    RawDecl decl;
    decl.name = lower(line.substr(name_start, pos - name_start));
    if (decl.name.empty()) {
      out.warnings.push_back({WarningKind::kBadValue, lineno,
                              fmt::format("unexpected '{}' in declarations", line[pos])});
      ++pos;
      skip_to_separator(line, pos);
      continue;
    }
    skip_spaces(line, pos);
    if (pos >= line.size() || line[pos] != ':') {
      decl.bad = true;
      out.warnings.push_back(
          {WarningKind::kBadValue, lineno, fmt::format("'{}' has no value", decl.name)});
      out.decls.push_back(std::move(decl));
      skip_to_separator(line, pos);
      continue;
    }
    ++pos;
    skip_spaces(line, pos);
    auto value = read_number(line, pos);
    if (!value) {
      decl.bad = true;
      out.warnings.push_back(
          {WarningKind::kBadValue, lineno, fmt::format("'{}' value is not a number", decl.name)});
      out.decls.push_back(std::move(decl));
      // Skip the value but stop at the next separator, ':' included, so the
      // following declaration is still seen.
      while (pos < line.size() && line[pos] != ';' && line[pos] != '}' && line[pos] != ':') ++pos;
      if (pos < line.size() && line[pos] == ':') ++pos;
      continue;
    }
    decl.value = *value;
    skip_spaces(line, pos);
    decl.unit = read_unit(line, pos);
    skip_spaces(line, pos);
    const std::string name = decl.name;
    out.decls.push_back(std::move(decl));
    if (pos >= line.size() || line[pos] == '}') {
      out.warnings.push_back({WarningKind::kMissingTrailingSemicolon, lineno,
                              fmt::format("no ';' after '{}'", name)});
      continue;
    }
    if (line[pos] == ';') {
      ++pos;
    } else if (line[pos] == ':' || line[pos] == ',') {
      out.warnings.push_back({WarningKind::kSeparatorTypo, lineno,
                              fmt::format("'{}' used instead of ';' after '{}'", line[pos], name)});
      ++pos;
    } else {
      out.warnings.push_back(
          {WarningKind::kSeparatorTypo, lineno, fmt::format("missing ';' after '{}'", name)});
    }
  }
  if (!closed) {
    out.warnings.push_back({WarningKind::kUnterminatedBlock, lineno, "missing '}'"});
  } else if (!trim(line.substr(pos)).empty()) {
    out.warnings.push_back({WarningKind::kUnparsableLine, lineno, "text after '}' ignored"});
  }
}

// Returns nullopt when the line is not an element line at all.
std::optional<RawLine> scan_line(std::string_view t, int lineno) {
  RawLine out;
  const auto brace = t.find('{');
  if (brace != std::string_view::npos) {
    out.css = true;
    out.selector = normalize_category(t.substr(0, brace));
    if (out.selector.empty()) return std::nullopt;
    scan_css_body(t, brace + 1, lineno, out);
    return out;
  }
  const auto colon = t.rfind(':');
  if (colon == std::string_view::npos) return std::nullopt;
  out.selector = normalize_category(t.substr(0, colon));
  std::string_view rest = trim(t.substr(colon + 1));
  if (out.selector.empty() || rest.empty()) return std::nullopt;
  std::size_t pos = 0;
  while (pos < rest.size()) {
    skip_spaces(rest, pos);
    RawDecl d;
    auto v = read_number(rest, pos);
    if (!v) return std::nullopt;
    d.value = *v;
    skip_spaces(rest, pos);
    d.unit = read_unit(rest, pos);
    skip_spaces(rest, pos);
    out.positional.push_back(std::move(d));
    if (pos >= rest.size()) break;
    if (rest[pos] != ',' && rest[pos] != ';') return std::nullopt;
    ++pos;
  }
  if (out.positional.empty()) return std::nullopt;
  return out;
}

bool unit_matches(const std::string& written, UnitSuffix expected) {
  switch (expected) {
    case UnitSuffix::kNone:
      return written.empty();
    case UnitSuffix::kPx:
      return written == "px";
    case UnitSuffix::kDegrees:
      return written == "degrees" || written == "degree" || written == "deg";
  }
  return false;
}

// Resolves a scanned line against the dialect's property list. Returns the
// property values in pixels (keyed by property_order index), or nullopt if a
// required property is missing or malformed.
std::optional<std::vector<double>> resolve(RawLine& raw, const DialectSpec& spec,
                                           const CanvasSpec& canvas, int lineno,
                                           std::vector<ParseWarning>& warnings) {
  const auto& order = spec.property_order;
  std::vector<std::optional<double>> values(order.size());
  bool ok = true;

  if (raw.css != spec.style.use_css) {
    warnings.push_back({WarningKind::kStyleMismatch, lineno,
                        raw.css ? "CSS block in a plain-list dialect"
                                : "plain value list in a CSS dialect"});
  }
  for (auto& w : raw.warnings) warnings.push_back(std::move(w));
  raw.warnings.clear();

  auto accept = [&](std::size_t idx, const RawDecl& d) {
    const std::string& prop = order[idx];
    const UnitSuffix expected = spec.unit_for(prop);
    if (!unit_matches(d.unit, expected)) {
      // Plain lists carry no units, so a missing unit is only worth noting in
      // CSS form.
      if (d.unit.empty()) {
        if (raw.css) {
          warnings.push_back({WarningKind::kMissingUnit, lineno,
                              fmt::format("'{}' has no '{}' suffix", prop, unit_text(expected))});
        }
      } else if (!(d.unit == "px" && expected == UnitSuffix::kNone && !raw.css)) {
        warnings.push_back({WarningKind::kUnexpectedUnit, lineno,
                            fmt::format("'{}' written with unit '{}'", prop, d.unit)});
      }
    }
    double v = d.value;
    if (prop == "orientation") {
      v = normalize_orientation(v);
    } else if (!spec.style.use_normalized_ints) {
      v *= extent_for(spec.dialect, prop, canvas);
    }
    values[idx] = v;
  };

  if (raw.css) {
    std::vector<std::size_t> seen_order;
    for (const auto& d : raw.decls) {
      auto it = std::find(order.begin(), order.end(), d.name);
      if (it == order.end()) {
        if (!d.bad) {
          warnings.push_back(
              {WarningKind::kUnknownProperty, lineno, fmt::format("ignored '{}'", d.name)});
        }
        continue;
      }
      const auto idx = static_cast<std::size_t>(it - order.begin());
      if (d.bad) {
        ok = false;
        continue;
      }
      if (values[idx]) {
        warnings.push_back(
            {WarningKind::kDuplicateProperty, lineno, fmt::format("'{}' given twice", d.name)});
      } else {
        seen_order.push_back(idx);
      }
      accept(idx, d);
    }
    if (!std::is_sorted(seen_order.begin(), seen_order.end())) {
      warnings.push_back({WarningKind::kReorderedProperties, lineno, "properties out of order"});
    }
  } else {
    if (raw.positional.size() != order.size()) {
      warnings.push_back({WarningKind::kMissingProperty, lineno,
                          fmt::format("expected {} values, got {}", order.size(),
                                      raw.positional.size())});
      return std::nullopt;
    }
    for (std::size_t i = 0; i < order.size(); ++i) accept(i, raw.positional[i]);
  }

  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!values[i]) {
      warnings.push_back(
          {WarningKind::kMissingProperty, lineno, fmt::format("'{}' missing", order[i])});
      ok = false;
    }
  }
  if (!ok) return std::nullopt;
  std::vector<double> out(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) out[i] = *values[i];
  return out;
}

std::optional<int> person_header(std::string_view t) {
  if (!istarts_with(t, "person")) return std::nullopt;
  std::size_t pos = 6;
  skip_spaces(t, pos);
  if (pos >= t.size() || t[pos] != '#') return std::nullopt;
  ++pos;
  skip_spaces(t, pos);
  int idx = 0;
  auto res = std::from_chars(t.data() + pos, t.data() + t.size(), idx);
  if (res.ec != std::errc() || idx <= 0) return std::nullopt;
  pos = static_cast<std::size_t>(res.ptr - t.data());
  std::string_view rest = trim(t.substr(pos));
  if (!rest.empty() && rest != ":") return std::nullopt;
  return idx;
}

bool is_section_header(std::string_view t) {
  return iequals(t, "layout:") || iequals(t, "keypoints:") || iequals(t, "layout") ||
         iequals(t, "keypoints");
}

class Parser {
 public:
  Parser(const DialectSpec& spec, const CanvasSpec& canvas) : spec_(spec), canvas_(canvas) {
    out_.layout.dialect = spec.dialect;
    out_.layout.canvas = canvas;
  }

  ParseOutcome run(std::string_view text) {
    int lineno = 0;
    std::size_t start = 0;
    while (start <= text.size() && !stopped_) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      ++lineno;
      handle_line(trim(text.substr(start, end - start)), lineno);
      start = end + 1;
    }
    if (!stopped_) end_block(lineno);
    flush_person(lineno);
    out_.failed = out_.layout.elements.empty();
    return std::move(out_);
  }

 private:
  void handle_line(std::string_view t, int lineno) {
    if (t.empty()) {
      end_block(lineno);
      return;
    }
    if (istarts_with(t, "prompt:")) {
      if (started_) {
        out_.warnings.push_back(
            {WarningKind::kTrailingText, lineno, "stopped at a new 'Prompt:' line"});
        stopped_ = true;
        return;
      }
      block_nonempty_ = true;
      return;
    }
    if (is_section_header(t)) return;
    block_nonempty_ = true;

    if (spec_.dialect == Dialect::kKeypoint) {
      if (auto idx = person_header(t)) {
        flush_person(lineno);
        person_ = KeypointSet{};
        person_->person_index = *idx;
        person_line_ = lineno;
        seen_nodes_.fill(false);
        last_person_index_ = *idx;
        return;
      }
    }

    auto raw = scan_line(t, lineno);
    if (!raw) {
      pending_unparsable_.push_back(lineno);
      return;
    }

    std::vector<ParseWarning> line_warnings;
    std::optional<std::size_t> node;
    if (spec_.dialect == Dialect::kKeypoint) {
      // Node names keep their underscores; selectors are already lowercased.
      node = keypoint_index(raw->selector);
      if (!node) {
        out_.warnings.push_back({WarningKind::kUnknownKeypointNode, lineno,
                                 fmt::format("dropped node '{}'", raw->selector)});
        block_has_element_ = true;
        return;
      }
    }
    auto values = resolve(*raw, spec_, canvas_, lineno, line_warnings);
    for (auto& w : line_warnings) out_.warnings.push_back(std::move(w));
    if (!values) {
      block_has_element_ = true;  // an element was attempted; the block is layout text
      return;
    }
    started_ = true;
    block_has_element_ = true;
    add_element(*raw, *values, node, lineno);
  }

  void add_element(const RawLine& raw, const std::vector<double>& v,
                   std::optional<std::size_t> node, int lineno) {
    const auto& order = spec_.property_order;
    switch (spec_.dialect) {
      case Dialect::kImage2d: {
        Element2D e;
        e.category = raw.selector;
        for (std::size_t i = 0; i < order.size(); ++i) *field(e, order[i]) = v[i];
        out_.layout.elements.emplace_back(std::move(e));
        break;
      }
      case Dialect::kScene3d: {
        Element3D e;
        e.category = raw.selector;
        for (std::size_t i = 0; i < order.size(); ++i) *field(e, order[i]) = v[i];
        out_.layout.elements.emplace_back(std::move(e));
        break;
      }
      case Dialect::kKeypoint: {
        if (!person_) {
          person_ = KeypointSet{};
          person_->person_index = last_person_index_ + 1;
          last_person_index_ = person_->person_index;
          person_line_ = lineno;
          seen_nodes_.fill(false);
          out_.warnings.push_back(
              {WarningKind::kImplicitPerson, lineno, "node line before any 'person#k:' header"});
        }
        if (seen_nodes_[*node]) {
          out_.warnings.push_back({WarningKind::kDuplicateKeypointNode, lineno,
                                   fmt::format("'{}' given twice", kKeypointNames[*node])});
        }
        seen_nodes_[*node] = true;
        auto& pos = person_->nodes[*node];
        for (std::size_t i = 0; i < order.size(); ++i) *field(pos, order[i]) = v[i];
        break;
      }
    }
  }

  void flush_person(int lineno) {
    if (!person_) return;
    const bool any = std::any_of(seen_nodes_.begin(), seen_nodes_.end(), [](bool b) { return b; });
    if (!any) {
      out_.warnings.push_back({WarningKind::kMissingKeypointNodes, person_line_,
                               fmt::format("person#{} has no nodes; dropped",
                                           person_->person_index)});
      person_.reset();
      return;
    }
    std::string missing;
    for (std::size_t i = 0; i < kKeypointCount; ++i) {
      if (!seen_nodes_[i]) {
        if (!missing.empty()) missing += ", ";
        missing += kKeypointNames[i];
        person_->nodes[i] = {0, 0};
      }
    }
    if (!missing.empty()) {
      out_.warnings.push_back({WarningKind::kMissingKeypointNodes, person_line_,
                               fmt::format("filled as invisible: {}", missing)});
    }
    out_.layout.elements.emplace_back(std::move(*person_));
    person_.reset();
    (void)lineno;
  }

  void end_block(int lineno) {
    if (block_nonempty_) {
      if (block_has_element_) {
        for (int l : pending_unparsable_) {
          out_.warnings.push_back({WarningKind::kUnparsableLine, l, "line ignored"});
        }
      } else if (started_) {
        out_.warnings.push_back(
            {WarningKind::kTrailingText, lineno, "stopped at a block without elements"});
        stopped_ = true;
      } else {
        out_.warnings.push_back(
            {WarningKind::kSkippedPreamble, lineno, "skipped text before the layout"});
      }
    }
    pending_unparsable_.clear();
    block_nonempty_ = false;
    block_has_element_ = false;
  }

  const DialectSpec& spec_;
  const CanvasSpec& canvas_;
  ParseOutcome out_;
  bool started_ = false;
  bool stopped_ = false;
  bool block_nonempty_ = false;
  bool block_has_element_ = false;
  std::vector<int> pending_unparsable_;
  std::optional<KeypointSet> person_;
  int person_line_ = 0;
  int last_person_index_ = 0;
  std::array<bool, kKeypointCount> seen_nodes_{};
};

}  // namespace

DialectSpec DialectSpec::make(Dialect d, StyleFlags style) {
  DialectSpec s;
  s.dialect = d;
  s.style = style;
  switch (d) {
    case Dialect::kImage2d:
      s.property_order = {"width", "height", "left", "top"};
      break;
    case Dialect::kScene3d:
      s.property_order = {"length", "width", "height", "left", "top", "depth", "orientation"};
      break;
    case Dialect::kKeypoint:
      s.property_order = {"left", "top"};
      break;
  }
  return s;
}

UnitSuffix DialectSpec::unit_for(std::string_view property) const {
  if (!style.use_css) return UnitSuffix::kNone;
  if (property == "orientation") return UnitSuffix::kDegrees;
  return style.use_normalized_ints ? UnitSuffix::kPx : UnitSuffix::kNone;
}

std::string_view unit_text(UnitSuffix u) {
  switch (u) {
    case UnitSuffix::kPx:
      return "px";
    case UnitSuffix::kDegrees:
      return "degrees";
    case UnitSuffix::kNone:
      return "";
  }
  return "";
}

std::string_view to_string(WarningKind k) {
  switch (k) {
    case WarningKind::kMissingUnit: return "missing_unit";
    case WarningKind::kUnexpectedUnit: return "unexpected_unit";
    case WarningKind::kMissingTrailingSemicolon: return "missing_trailing_semicolon";
    case WarningKind::kSeparatorTypo: return "separator_typo";
    case WarningKind::kReorderedProperties: return "reordered_properties";
    case WarningKind::kUnknownProperty: return "unknown_property";
    case WarningKind::kDuplicateProperty: return "duplicate_property";
    case WarningKind::kMissingProperty: return "missing_property";
    case WarningKind::kBadValue: return "bad_value";
    case WarningKind::kUnterminatedBlock: return "unterminated_block";
    case WarningKind::kStyleMismatch: return "style_mismatch";
    case WarningKind::kUnparsableLine: return "unparsable_line";
    case WarningKind::kSkippedPreamble: return "skipped_preamble";
    case WarningKind::kTrailingText: return "trailing_text";
    case WarningKind::kUnknownKeypointNode: return "unknown_keypoint_node";
    case WarningKind::kDuplicateKeypointNode: return "duplicate_keypoint_node";
    case WarningKind::kMissingKeypointNodes: return "missing_keypoint_nodes";
    case WarningKind::kImplicitPerson: return "implicit_person";
  }
  return "unknown";
}

bool ParseOutcome::has_warning(WarningKind k) const {
  return std::any_of(warnings.begin(), warnings.end(),
                     [k](const ParseWarning& w) { return w.kind == k; });
}

std::string serialize_element(const Element& el, const DialectSpec& spec,
                              const CanvasSpec& canvas) {
  if (dialect_of(el) != spec.dialect) {
    throw std::invalid_argument(fmt::format("element dialect {} does not match {}",
                                            to_string(dialect_of(el)), to_string(spec.dialect)));
  }
  std::vector<std::pair<std::string_view, double>> values;
  values.reserve(spec.property_order.size());
  if (const auto* e2 = std::get_if<Element2D>(&el)) {
    Element2D copy = *e2;
    for (const auto& p : spec.property_order) values.emplace_back(p, *field(copy, p));
    return format_line(e2->category, values, spec, canvas);
  }
  if (const auto* e3 = std::get_if<Element3D>(&el)) {
    Element3D copy = *e3;
    for (const auto& p : spec.property_order) values.emplace_back(p, *field(copy, p));
    return format_line(e3->category, values, spec, canvas);
  }
  const auto& kp = std::get<KeypointSet>(el);
  std::string out = fmt::format("person#{}:", kp.person_index);
  for (std::size_t i = 0; i < kKeypointCount; ++i) {
    KeypointPos pos = kp.nodes[i];
    values.clear();
    for (const auto& p : spec.property_order) values.emplace_back(p, *field(pos, p));
    out += '\n';
    out += format_line(kKeypointNames[i], values, spec, canvas);
  }
  return out;
}

std::string serialize(const Layout& layout, const DialectSpec& spec) {
  if (layout.dialect != spec.dialect) {
    throw std::invalid_argument(fmt::format("layout dialect {} does not match {}",
                                            to_string(layout.dialect), to_string(spec.dialect)));
  }
  std::string out;
  for (std::size_t i = 0; i < layout.elements.size(); ++i) {
    if (i > 0) out += '\n';
    out += serialize_element(layout.elements[i], spec, layout.canvas);
  }
  return out;
}

ParseOutcome parse(std::string_view text, const DialectSpec& spec, const CanvasSpec& canvas) {
  try {
    return Parser(spec, canvas).run(text);
  } catch (const std::exception& e) {
    // The scanner does not throw on any input; allocation failure is the only
    // way here.
    ParseOutcome out;
    out.layout.dialect = spec.dialect;
    out.layout.canvas = canvas;
    out.warnings.push_back({WarningKind::kUnparsableLine, 0, e.what()});
    out.failed = true;
    return out;
  }
}

Layout snap_to_dialect(const Layout& layout, const DialectSpec& spec) {
  Layout out = layout;
  const auto& c = layout.canvas;
  auto snap = [&](double px, std::string_view prop) {
    if (prop == "orientation") return normalize_orientation(std::round(px));
    if (spec.style.use_normalized_ints) return std::round(px) + 0.0;
    const double extent = extent_for(spec.dialect, prop, c);
    return std::round(px / extent * 100.0) / 100.0 * extent;
  };
  for (auto& el : out.elements) {
    if (auto* e2 = std::get_if<Element2D>(&el)) {
      e2->category = normalize_category(e2->category);
      for (const auto& p : spec.property_order) *field(*e2, p) = snap(*field(*e2, p), p);
    } else if (auto* e3 = std::get_if<Element3D>(&el)) {
      e3->category = normalize_category(e3->category);
      for (const auto& p : spec.property_order) *field(*e3, p) = snap(*field(*e3, p), p);
    } else {
      auto& kp = std::get<KeypointSet>(el);
      for (auto& n : kp.nodes) {
        for (const auto& p : spec.property_order) *field(n, p) = snap(*field(n, p), p);
      }
    }
  }
  return out;
}

bool roundtrip_check(const Layout& layout, const DialectSpec& spec) {
  if (layout.dialect != spec.dialect) return false;
  const auto outcome = parse(serialize(layout, spec), spec, layout.canvas);
  return outcome.layout.elements == layout.elements;
}

}  // namespace layoutplan
