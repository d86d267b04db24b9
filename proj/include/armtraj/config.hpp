#ifndef ARMTRAJ_CONFIG_HPP_
#define ARMTRAJ_CONFIG_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace armtraj::config {

/// One parsed config value. Arrays are numeric only (flat or one level of
/// nesting), which covers every shipped file format.
struct Value {
  enum class Kind { kString, kNumber, kBool, kNumberArray, kNestedArray };

  Kind kind = Kind::kString;
  std::string str;
  double num = 0.0;
  bool boolean = false;
  std::vector<double> array;
  std::vector<std::vector<double>> nested;
  std::size_t line = 0;  // 1-based, for error messages
};

/// Structured key/value text: `key = value` lines grouped by `[section]`
/// headers, `#` comments, double-quoted strings, numbers, booleans, and
/// (possibly multi-line) numeric arrays. Keys are addressed with dots:
/// "limits.q1".
class Document {
 public:
  static Document parse_file(const std::filesystem::path& path);
  static Document parse_string(const std::string& text,
                               const std::string& origin = "<string>");

  bool has(const std::string& key) const;
  const Value& at(const std::string& key) const;

  std::string get_string(const std::string& key) const;
  double get_number(const std::string& key) const;
  double get_number_or(const std::string& key, double fallback) const;
  bool get_bool_or(const std::string& key, bool fallback) const;
  const std::vector<double>& get_number_array(const std::string& key) const;
  const std::vector<std::vector<double>>& get_nested_array(
      const std::string& key) const;

  /// All keys, in file order.
  const std::vector<std::string>& keys() const { return order_; }
  const std::string& origin() const { return origin_; }

 private:
  std::map<std::string, Value> values_;
  std::vector<std::string> order_;
  std::string origin_;
};

}  // namespace armtraj::config

#endif  // ARMTRAJ_CONFIG_HPP_
