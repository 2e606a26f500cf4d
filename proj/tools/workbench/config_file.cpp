#include "config_file.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "zfskit/error.hpp"

namespace zfs::cli {

namespace {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;
  void skip_ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size() || s[i] == '#';
  }
};

bool bare_key_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

}  // namespace

ConfigFile ConfigFile::parse(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Config, path.string() + ": cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  ConfigFile f = parse_text(ss.str(), path.string());
  f.base_ = path.parent_path();
  return f;
}

ConfigFile ConfigFile::parse_text(const std::string& text, const std::string& origin) {
  ConfigFile f;
  f.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int no = 0;

  auto bad = [&](const std::string& what) {
    fail(ErrorKind::Config, origin + ":" + std::to_string(no) + ": " + what);
  };

  auto scalar = [&](Cursor& c) -> Scalar {
    c.skip_ws();
    if (c.i >= c.s.size()) bad("missing value");
    if (c.s[c.i] == '"') {
      std::string out;
      ++c.i;
      while (c.i < c.s.size() && c.s[c.i] != '"') {
        if (c.s[c.i] == '\\' && c.i + 1 < c.s.size()) {
          const char e = c.s[++c.i];
          out += e == 'n' ? '\n' : e == 't' ? '\t' : e;
        } else {
          out += c.s[c.i];
        }
        ++c.i;
      }
      if (c.i >= c.s.size()) bad("unterminated string");
      ++c.i;
      return out;
    }
    std::size_t j = c.i;
    while (j < c.s.size() && c.s[j] != ',' && c.s[j] != ']' && c.s[j] != '#' && c.s[j] != ' ' && c.s[j] != '\t') ++j;
    const std::string tok = c.s.substr(c.i, j - c.i);
    c.i = j;
    if (tok == "true") return true;
    if (tok == "false") return false;
    std::string digits;
    for (char ch : tok) {
      if (ch != '_') digits += ch;
    }
    const char* b = digits.data();
    if (!digits.empty() && *b == '+') ++b;
    double v = 0.0;
    auto [p, ec] = std::from_chars(b, digits.data() + digits.size(), v);
    if (tok.empty() || ec != std::errc() || p != digits.data() + digits.size() || !std::isfinite(v)) {
      bad("cannot parse value '" + tok + "' (strings need double quotes)");
    }
    return v;
  };

  while (std::getline(in, line)) {
    ++no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    Cursor c{line};
    if (c.done()) continue;
    if (line[c.i] == '[') {
      const std::size_t close = line.find(']', c.i);
      if (close == std::string::npos) bad("unterminated section header");
      section = line.substr(c.i + 1, close - c.i - 1);
      for (char ch : section) {
        if (!bare_key_char(ch)) bad("invalid section name '" + section + "'");
      }
      c.i = close + 1;
      if (!c.done()) bad("unexpected text after section header");
      continue;
    }
    const std::size_t k0 = c.i;
    while (c.i < line.size() && bare_key_char(line[c.i])) ++c.i;
    const std::string key = line.substr(k0, c.i - k0);
    if (key.empty()) bad("expected key = value");
    c.skip_ws();
    if (c.i >= line.size() || line[c.i] != '=') bad("expected '=' after key '" + key + "'");
    ++c.i;
    c.skip_ws();

    Value value;
    if (c.i < line.size() && line[c.i] == '[') {
      ++c.i;
      std::vector<Scalar> items;
      c.skip_ws();
      if (c.i < line.size() && line[c.i] == ']') {
        ++c.i;
      } else {
        for (;;) {
          items.push_back(scalar(c));
          c.skip_ws();
          if (c.i < line.size() && line[c.i] == ',') {
            ++c.i;
            continue;
          }
          if (c.i < line.size() && line[c.i] == ']') {
            ++c.i;
            break;
          }
          bad("expected ',' or ']' in array (arrays must fit on one line)");
        }
      }
      value = std::move(items);
    } else {
      value = scalar(c);
    }
    if (!c.done()) bad("unexpected text after value of '" + key + "'");
    const std::string full = section.empty() ? key : section + "." + key;
    if (f.values_.count(full)) bad("duplicate key '" + full + "'");
    f.values_[full] = Entry{std::move(value), no};
  }
  return f;
}

void ConfigFile::error(const std::string& key, const std::string& what) const {
  const int line = values_.count(key) ? values_.at(key).line : 0;
  fail(ErrorKind::Config, origin_ + ":" + std::to_string(line) + ": " + key + ": " + what);
}

std::optional<std::string> ConfigFile::string(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  const auto* s = std::get_if<Scalar>(&it->second.value);
  if (!s || !std::holds_alternative<std::string>(*s)) error(key, "expected a quoted string");
  return std::get<std::string>(*s);
}

std::optional<double> ConfigFile::number(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  const auto* s = std::get_if<Scalar>(&it->second.value);
  if (!s || !std::holds_alternative<double>(*s)) error(key, "expected a number");
  return std::get<double>(*s);
}

std::optional<int> ConfigFile::integer(const std::string& key) const {
  const auto v = number(key);
  if (!v) return std::nullopt;
  if (*v != std::floor(*v) || std::abs(*v) > 1e9) error(key, "expected an integer");
  return static_cast<int>(*v);
}

std::optional<bool> ConfigFile::boolean(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  const auto* s = std::get_if<Scalar>(&it->second.value);
  if (!s || !std::holds_alternative<bool>(*s)) error(key, "expected true or false");
  return std::get<bool>(*s);
}

std::optional<std::vector<std::string>> ConfigFile::strings(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  std::vector<std::string> out;
  if (const auto* s = std::get_if<Scalar>(&it->second.value)) {
    if (!std::holds_alternative<std::string>(*s)) error(key, "expected a string or a list of strings");
    out.push_back(std::get<std::string>(*s));
    return out;
  }
  for (const auto& item : std::get<std::vector<Scalar>>(it->second.value)) {
    if (!std::holds_alternative<std::string>(item)) error(key, "expected a list of strings");
    out.push_back(std::get<std::string>(item));
  }
  return out;
}

std::optional<std::vector<double>> ConfigFile::numbers(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  const auto* list = std::get_if<std::vector<Scalar>>(&it->second.value);
  if (!list) error(key, "expected a list of numbers");
  std::vector<double> out;
  for (const auto& item : *list) {
    if (!std::holds_alternative<double>(item)) error(key, "expected a list of numbers");
    out.push_back(std::get<double>(item));
  }
  return out;
}

void ConfigFile::reject_unknown(const std::set<std::string>& known) const {
  for (const auto& [key, entry] : values_) {
    if (!known.count(key)) error(key, "unknown key");
  }
}

}  // namespace zfs::cli
