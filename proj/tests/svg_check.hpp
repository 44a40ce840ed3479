// Copyright 2026 The sfinfo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Minimal XML reader for the SVG subset the report module emits. It checks
// well-formedness (balanced tags, quoted attributes, single root) and lists
// every element with its attributes and enclosing panel id.

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sfinfo::svgcheck {

struct Element {
  std::string name;
  std::map<std::string, std::string> attrs;
  std::string panel;  // id of the nearest enclosing <g class="panel">, if any

  std::string attr(const std::string& key) const {
    auto it = attrs.find(key);
    return it == attrs.end() ? std::string{} : it->second;
  }
};

struct Document {
  std::string root;
  std::vector<Element> elements;
};

inline bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ||
         c == ':' || c == '.';
}

// Returns nullopt when the text is not well-formed.
inline std::optional<Document> parse(const std::string& text) {
  Document doc;
  struct Open {
    std::string name;
    std::string panel;
  };
  std::vector<Open> stack;
  bool root_closed = false;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto skip_ws = [&] {
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  while (i < n) {
    if (text[i] != '<') {
      if (stack.empty() && !std::isspace(static_cast<unsigned char>(text[i]))) {
        return std::nullopt;  // text outside the root
      }
      if (text[i] == '&') {
        const auto semi = text.find(';', i);
        if (semi == std::string::npos) return std::nullopt;
        const std::string ent = text.substr(i, semi - i + 1);
        if (ent != "&amp;" && ent != "&lt;" && ent != "&gt;" &&
            ent != "&quot;" && ent != "&apos;") {
          return std::nullopt;
        }
        i = semi + 1;
        continue;
      }
      ++i;
      continue;
    }
    if (text.compare(i, 5, "<?xml") == 0) {
      if (!doc.root.empty()) return std::nullopt;
      const auto end = text.find("?>", i);
      if (end == std::string::npos) return std::nullopt;
      i = end + 2;
      continue;
    }
    if (text.compare(i, 4, "<!--") == 0) {
      const auto end = text.find("-->", i);
      if (end == std::string::npos) return std::nullopt;
      i = end + 3;
      continue;
    }
    if (text.compare(i, 2, "</") == 0) {
      i += 2;
      const std::size_t start = i;
      while (i < n && is_name_char(text[i])) ++i;
      const std::string name = text.substr(start, i - start);
      skip_ws();
      if (i >= n || text[i] != '>') return std::nullopt;
      ++i;
      if (stack.empty() || stack.back().name != name) return std::nullopt;
      stack.pop_back();
      if (stack.empty()) root_closed = true;
      continue;
    }
    ++i;
    if (root_closed) return std::nullopt;  // second root element
    const std::size_t start = i;
    while (i < n && is_name_char(text[i])) ++i;
    Element el;
    el.name = text.substr(start, i - start);
    if (el.name.empty()) return std::nullopt;
    bool self_closing = false;
    for (;;) {
      skip_ws();
      if (i >= n) return std::nullopt;
      if (text[i] == '>') {
        ++i;
        break;
      }
      if (text.compare(i, 2, "/>") == 0) {
        i += 2;
        self_closing = true;
        break;
      }
      const std::size_t key_start = i;
      while (i < n && is_name_char(text[i])) ++i;
      const std::string key = text.substr(key_start, i - key_start);
      if (key.empty()) return std::nullopt;
      skip_ws();
      if (i >= n || text[i] != '=') return std::nullopt;
      ++i;
      skip_ws();
      if (i >= n || text[i] != '"') return std::nullopt;
      const auto close = text.find('"', i + 1);
      if (close == std::string::npos) return std::nullopt;
      const std::string value = text.substr(i + 1, close - i - 1);
      if (value.find('<') != std::string::npos) return std::nullopt;
      if (!el.attrs.emplace(key, value).second) return std::nullopt;
      i = close + 1;
    }
    if (stack.empty()) doc.root = el.name;
    el.panel = stack.empty() ? std::string{} : stack.back().panel;
    std::string inner_panel = el.panel;
    if (el.name == "g" && el.attr("class") == "panel") inner_panel = el.attr("id");
    doc.elements.push_back(el);
    if (self_closing) {
      if (stack.empty()) root_closed = true;
    } else {
      stack.push_back({el.name, inner_panel});
    }
  }
  if (!stack.empty() || !root_closed) return std::nullopt;
  return doc;
}

inline int count_if(const Document& doc, const std::string& name,
                    const std::string& key, const std::string& value) {
  int c = 0;
  for (const auto& e : doc.elements) {
    c += e.name == name && e.attr(key) == value;
  }
  return c;
}

// Elements of any kind whose fill or stroke is exactly `color`.
inline int count_color(const Document& doc, const std::string& color) {
  int c = 0;
  for (const auto& e : doc.elements) {
    c += e.attr("fill") == color || e.attr("stroke") == color;
  }
  return c;
}

inline int count_in_panel(const Document& doc, const std::string& name,
                          const std::string& panel) {
  int c = 0;
  for (const auto& e : doc.elements) c += e.name == name && e.panel == panel;
  return c;
}

// Parses a polyline points attribute into (x, y) pairs.
inline std::vector<std::pair<double, double>> points_of(const Element& e) {
  std::vector<std::pair<double, double>> out;
  const std::string pts = e.attr("points");
  std::size_t i = 0;
  while (i < pts.size()) {
    std::size_t used = 0;
    const double x = std::stod(pts.substr(i), &used);
    i += used + 1;  // skip comma
    const double y = std::stod(pts.substr(i), &used);
    i += used;
    while (i < pts.size() && pts[i] == ' ') ++i;
    out.emplace_back(x, y);
  }
  return out;
}

}  // namespace sfinfo::svgcheck
