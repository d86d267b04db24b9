#include "armtraj/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "armtraj/errors.hpp"

namespace armtraj::config {

namespace {

/// Strip a trailing comment (a '#' outside double quotes) and whitespace.
std::string strip(const std::string& raw) {
  std::string s;
  bool in_quotes = false;
  for (char c : raw) {
    if (c == '"') in_quotes = !in_quotes;
    if (c == '#' && !in_quotes) break;
    s += c;
  }
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.') {
      return false;
    }
  }
  return true;
}

double parse_number(const std::string& text, std::size_t line) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw ParseError(line, "expected a number, got '" + text + "'");
  }
  return v;
}

/// Parse the contents between the outer brackets of an array literal.
/// Splits on top-level commas; a nested "[...]" element makes the value a
/// nested array (all elements must then be nested).
Value parse_array(const std::string& body, std::size_t line) {
  std::vector<std::string> elements;
  std::string current;
  int depth = 0;
  for (char c : body) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ',' && depth == 0) {
      elements.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  elements.push_back(current);

  Value v;
  v.line = line;
  bool saw_nested = false;
  bool saw_flat = false;
  for (std::string& e : elements) {
    const std::string item = strip(e);
    if (item.empty()) continue;  // trailing comma
    if (item.front() == '[') {
      if (item.back() != ']') {
        throw ParseError(line, "unterminated inner array");
      }
      saw_nested = true;
      std::vector<double> row;
      std::stringstream ss(item.substr(1, item.size() - 2));
      std::string cell;
      while (std::getline(ss, cell, ',')) {
        const std::string num = strip(cell);
        if (num.empty()) continue;
        row.push_back(parse_number(num, line));
      }
      v.nested.push_back(std::move(row));
    } else {
      saw_flat = true;
      v.array.push_back(parse_number(item, line));
    }
  }
  if (saw_nested && saw_flat) {
    throw ParseError(line, "array mixes numbers and inner arrays");
  }
  v.kind = saw_nested ? Value::Kind::kNestedArray : Value::Kind::kNumberArray;
  return v;
}

Value parse_value(const std::string& text, std::size_t line) {
  Value v;
  v.line = line;
  if (text.empty()) throw ParseError(line, "empty value");

  if (text.front() == '"') {
    if (text.size() < 2 || text.back() != '"') {
      throw ParseError(line, "unterminated string");
    }
    v.kind = Value::Kind::kString;
    v.str = text.substr(1, text.size() - 2);
    return v;
  }
  if (text == "true" || text == "false") {
    v.kind = Value::Kind::kBool;
    v.boolean = (text == "true");
    return v;
  }
  if (text.front() == '[') {
    if (text.back() != ']') throw ParseError(line, "unterminated array");
    return parse_array(text.substr(1, text.size() - 2), line);
  }
  v.kind = Value::Kind::kNumber;
  v.num = parse_number(text, line);
  return v;
}

const char* kind_name(Value::Kind k) {
  switch (k) {
    case Value::Kind::kString: return "string";
    case Value::Kind::kNumber: return "number";
    case Value::Kind::kBool: return "boolean";
    case Value::Kind::kNumberArray: return "number array";
    case Value::Kind::kNestedArray: return "nested array";
  }
  return "?";
}

}  // namespace

Document Document::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open config file: " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_string(buffer.str(), path.string());
}

Document Document::parse_string(const std::string& text,
                                const std::string& origin) {
  Document doc;
  doc.origin_ = origin;

  std::istringstream in(text);
  std::string raw;
  std::string section;
  std::size_t line_no = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = strip(raw);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ParseError(line_no, "malformed section header");
      }
      section = strip(line.substr(1, line.size() - 2));
      if (!valid_key(section)) {
        throw ParseError(line_no, "invalid section name '" + section + "'");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(line_no, "expected 'key = value'");
    }
    const std::string key = strip(line.substr(0, eq));
    if (!valid_key(key)) {
      throw ParseError(line_no, "invalid key '" + key + "'");
    }
    std::string value_text = strip(line.substr(eq + 1));
    const std::size_t value_line = line_no;

    // Multi-line arrays: keep consuming until brackets balance.
    if (!value_text.empty() && value_text.front() == '[') {
      auto bracket_balance = [](const std::string& s) {
        int depth = 0;
        for (char c : s) {
          if (c == '[') ++depth;
          if (c == ']') --depth;
        }
        return depth;
      };
      while (bracket_balance(value_text) > 0 && std::getline(in, raw)) {
        ++line_no;
        const std::string cont = strip(raw);
        if (cont.empty()) continue;
        value_text += " ";
        value_text += cont;
      }
      if (bracket_balance(value_text) != 0) {
        throw ParseError(value_line, "unterminated array");
      }
    }

    const std::string full_key = section.empty() ? key : section + "." + key;
    if (doc.values_.count(full_key) != 0) {
      throw ParseError(value_line, "duplicate key '" + full_key + "'");
    }
    doc.values_[full_key] = parse_value(value_text, value_line);
    doc.order_.push_back(full_key);
  }
  return doc;
}

bool Document::has(const std::string& key) const {
  return values_.count(key) != 0;
}

const Value& Document::at(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    throw ValidationError(key, "missing required key (in " + origin_ + ")");
  }
  return it->second;
}

namespace {
[[noreturn]] void type_mismatch(const std::string& key, const Value& v,
                                Value::Kind want) {
  throw ValidationError(key, std::string("expected ") + kind_name(want) +
                                 ", got " + kind_name(v.kind) + " (line " +
                                 std::to_string(v.line) + ")");
}
}  // namespace

std::string Document::get_string(const std::string& key) const {
  const Value& v = at(key);
  if (v.kind != Value::Kind::kString) type_mismatch(key, v, Value::Kind::kString);
  return v.str;
}

double Document::get_number(const std::string& key) const {
  const Value& v = at(key);
  if (v.kind != Value::Kind::kNumber) type_mismatch(key, v, Value::Kind::kNumber);
  return v.num;
}

double Document::get_number_or(const std::string& key, double fallback) const {
  return has(key) ? get_number(key) : fallback;
}

bool Document::get_bool_or(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const Value& v = at(key);
  if (v.kind != Value::Kind::kBool) type_mismatch(key, v, Value::Kind::kBool);
  return v.boolean;
}

const std::vector<double>& Document::get_number_array(
    const std::string& key) const {
  const Value& v = at(key);
  if (v.kind != Value::Kind::kNumberArray) {
    type_mismatch(key, v, Value::Kind::kNumberArray);
  }
  return v.array;
}

const std::vector<std::vector<double>>& Document::get_nested_array(
    const std::string& key) const {
  const Value& v = at(key);
  if (v.kind != Value::Kind::kNestedArray) {
    type_mismatch(key, v, Value::Kind::kNestedArray);
  }
  return v.nested;
}

}  // namespace armtraj::config
