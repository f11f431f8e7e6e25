// Copyright 2026 The curate-se Authors
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

// Reader for the small TOML subset used by curation and degradation
// configs: [section.headers], key = value, with numbers, booleans,
// "strings" and single-line [arrays] of those. '#' starts a comment.

#pragma once

#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "curate_se/error.hpp"

namespace curate_se::config_text {

struct Value {
  enum class Kind { kNumber, kBool, kString, kArray };
  Kind kind = Kind::kNumber;
  std::string text;  // raw number token or unquoted string
  bool flag = false;
  std::vector<Value> items;
  int line = 0;

  double as_number(const std::string& key) const {
    if (kind != Kind::kNumber) throw ValidationError(where(key) + "expected a number");
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0') throw ValidationError(where(key) + "bad number '" + text + "'");
    return v;
  }

  std::uint64_t as_u64(const std::string& key) const {
    if (kind != Kind::kNumber || text.empty() || text[0] == '-') {
      throw ValidationError(where(key) + "expected a non-negative integer");
    }
    char* end = nullptr;
    const auto v = std::strtoull(text.c_str(), &end, 10);
    if (*end != '\0') throw ValidationError(where(key) + "expected an integer, got '" + text + "'");
    return v;
  }

  bool as_bool(const std::string& key) const {
    if (kind != Kind::kBool) throw ValidationError(where(key) + "expected true or false");
    return flag;
  }

  const std::string& as_string(const std::string& key) const {
    if (kind != Kind::kString) throw ValidationError(where(key) + "expected a string");
    return text;
  }

  const std::vector<Value>& as_array(const std::string& key) const {
    if (kind != Kind::kArray) throw ValidationError(where(key) + "expected an array");
    return items;
  }

  std::string where(const std::string& key) const {
    return "config line " + std::to_string(line) + " (" + key + "): ";
  }
};

struct Section {
  std::string name;  // "" for keys before the first header
  std::map<std::string, Value> entries;
};

using Document = std::vector<Section>;

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline std::string strip_comment(const std::string& s) {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

inline std::string unquote_key(const std::string& raw, int line) {
  const std::string k = trim(raw);
  if (k.size() >= 2 && k.front() == '"' && k.back() == '"') return k.substr(1, k.size() - 2);
  if (k.empty()) throw ValidationError("config line " + std::to_string(line) + ": empty key");
  return k;
}

class ValueParser {
 public:
  ValueParser(const std::string& text, int line) : s_(text), line_(line) {}

  Value parse() {
    Value v = value();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing characters after value");
    return v;
  }

 private:
  Value value() {
    skip_ws();
    if (pos_ >= s_.size()) fail("missing value");
    Value v;
    v.line = line_;
    const char c = s_[pos_];
    if (c == '"') {
      v.kind = Value::Kind::kString;
      ++pos_;
      while (pos_ < s_.size() && s_[pos_] != '"') {
        if (s_[pos_] == '\\' && pos_ + 1 < s_.size()) ++pos_;
        v.text.push_back(s_[pos_++]);
      }
      if (pos_ >= s_.size()) fail("unterminated string");
      ++pos_;
    } else if (c == '[') {
      v.kind = Value::Kind::kArray;
      ++pos_;
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == ']') {
        ++pos_;
        return v;
      }
      while (true) {
        v.items.push_back(value());
        skip_ws();
        if (pos_ >= s_.size()) fail("unterminated array");
        if (s_[pos_] == ',') {
          ++pos_;
          skip_ws();
          if (pos_ < s_.size() && s_[pos_] == ']') {
            ++pos_;
            break;
          }
          continue;
        }
        if (s_[pos_] == ']') {
          ++pos_;
          break;
        }
        fail("expected ',' or ']' in array");
      }
    } else {
      std::size_t start = pos_;
      while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != ']' &&
             !std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
      }
      const std::string token = s_.substr(start, pos_ - start);
      if (token == "true" || token == "false") {
        v.kind = Value::Kind::kBool;
        v.flag = token == "true";
      } else {
        v.kind = Value::Kind::kNumber;
        v.text = token;
        std::erase(v.text, '_');
        char* end = nullptr;
        std::strtod(v.text.c_str(), &end);
        if (v.text.empty() || *end != '\0') fail("cannot parse value '" + token + "'");
      }
    }
    return v;
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ValidationError("config line " + std::to_string(line_) + ": " + msg);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int line_;
};

// Net count of '[' over ']' outside quoted strings.
inline int open_brackets(const std::string& text) {
  int depth = 0;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '\\') ++i;
      else if (c == '"') quoted = false;
    } else if (c == '"') {
      quoted = true;
    } else if (c == '[') {
      ++depth;
    } else if (c == ']') {
      --depth;
    }
  }
  return depth;
}

}  // namespace detail

inline Document parse(std::istream& in) {
  Document doc;
  doc.push_back(Section{});
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = detail::trim(detail::strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ValidationError("config line " + std::to_string(line_no) + ": bad section header");
      std::string name;
      // Quoted segments keep their dots: [thresholds."Common Voice"]
      const std::string inner = detail::trim(line.substr(1, line.size() - 2));
      bool quoted = false;
      for (char c : inner) {
        if (c == '"') {
          quoted = !quoted;
          continue;
        }
        name.push_back(c == '.' && quoted ? '\x1f' : c);
      }
      if (name.empty()) throw ValidationError("config line " + std::to_string(line_no) + ": empty section name");
      for (const auto& s : doc) {
        if (s.name == name) throw ValidationError("config line " + std::to_string(line_no) + ": duplicate section [" + inner + "]");
      }
      doc.push_back(Section{name, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ValidationError("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = detail::unquote_key(line.substr(0, eq), line_no);
    const int first_line = line_no;
    std::string text = line.substr(eq + 1);
    // arrays may continue over several lines
    while (detail::open_brackets(text) > 0 && std::getline(in, raw)) {
      ++line_no;
      text += ' ' + detail::trim(detail::strip_comment(raw));
    }
    Value v = detail::ValueParser(text, first_line).parse();
    auto& entries = doc.back().entries;
    if (entries.count(key)) throw ValidationError("config line " + std::to_string(line_no) + ": duplicate key " + key);
    entries.emplace(key, std::move(v));
  }
  return doc;
}

inline Document parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

// Splits "thresholds.EARS" into its dotted parts (quoted dots preserved).
inline std::vector<std::string> split_section(const std::string& name) {
  std::vector<std::string> parts(1);
  for (char c : name) {
    if (c == '.') {
      parts.emplace_back();
    } else {
      parts.back().push_back(c == '\x1f' ? '.' : c);
    }
  }
  return parts;
}

}  // namespace curate_se::config_text
