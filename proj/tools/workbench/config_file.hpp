#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace zfs::cli {

/// Minimal TOML subset used for run configs:
///   # comment
///   [section]
///   key = "text" | 1.5 | 3 | true | [1, 2, 3] | ["a", "b"]
/// Keys are addressed as "section.key". Every error is a Config error naming
/// the file and line.
class ConfigFile {
 public:
  using Scalar = std::variant<std::string, double, bool>;
  using Value = std::variant<Scalar, std::vector<Scalar>>;

  static ConfigFile parse(const std::filesystem::path& path);
  static ConfigFile parse_text(const std::string& text, const std::string& origin);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::optional<std::string> string(const std::string& key) const;
  std::optional<double> number(const std::string& key) const;
  std::optional<int> integer(const std::string& key) const;
  std::optional<bool> boolean(const std::string& key) const;
  std::optional<std::vector<std::string>> strings(const std::string& key) const;
  std::optional<std::vector<double>> numbers(const std::string& key) const;

  /// Throws for the first key not in `known`.
  void reject_unknown(const std::set<std::string>& known) const;

  /// Directory used to resolve relative paths.
  const std::filesystem::path& base() const { return base_; }

 private:
  struct Entry {
    Value value;
    int line = 0;
  };
  [[noreturn]] void error(const std::string& key, const std::string& what) const;

  std::map<std::string, Entry> values_;
  std::string origin_;
  std::filesystem::path base_;
};

}  // namespace zfs::cli
