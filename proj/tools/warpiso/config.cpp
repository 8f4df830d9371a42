#include "config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace warpiso::cli {

namespace {

struct Cursor {
  const std::string& text;
  std::size_t pos = 0;
  std::string where;

  [[noreturn]] void fail(const std::string& what) const { throw ConfigError(where + ": " + what); }
  void skip_space() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool done() {
    skip_space();
    return pos >= text.size() || text[pos] == '#';
  }
  char peek() {
    skip_space();
    return pos < text.size() ? text[pos] : '\0';
  }

  std::string read_string() {
    ++pos;  // opening quote
    std::string out;
    while (pos < text.size() && text[pos] != '"') {
      if (text[pos] == '\\' && pos + 1 < text.size()) ++pos;
      out.push_back(text[pos++]);
    }
    if (pos >= text.size()) fail("unterminated string");
    ++pos;
    return out;
  }

  double read_number() {
    const std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) && text[pos] != ',' &&
           text[pos] != ']' && text[pos] != '#')
      ++pos;
    const std::string token = text.substr(start, pos - start);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (token.empty() || used != token.size() || !std::isfinite(v))
      fail("expected a number or a double-quoted string, got '" + token + "'");
    return v;
  }

  ConfigValue read_value() {
    const char c = peek();
    if (c == '"') return read_string();
    if (c != '[') return read_number();
    ++pos;
    std::vector<double> numbers;
    std::vector<std::string> strings;
    if (peek() == ']') {
      ++pos;
      return numbers;
    }
    while (true) {
      if (peek() == '"') {
        if (!numbers.empty()) fail("arrays must not mix strings and numbers");
        strings.push_back(read_string());
      } else {
        if (!strings.empty()) fail("arrays must not mix strings and numbers");
        numbers.push_back(read_number());
      }
      const char next = peek();
      ++pos;
      if (next == ']') break;
      if (next != ',') fail("expected ',' or ']' in array");
    }
    if (!strings.empty()) return strings;
    return numbers;
  }
};

const char* type_name(const ConfigValue& v) {
  switch (v.index()) {
    case 0: return "a number";
    case 1: return "a string";
    case 2: return "an array of numbers";
    default: return "an array of strings";
  }
}

}  // namespace

Config Config::parse(const std::string& text, const std::string& source) {
  Config cfg;
  cfg.source_ = source;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    Cursor cur{line, 0, source + ":" + std::to_string(number)};
    if (cur.done()) continue;
    const std::size_t start = cur.pos;
    while (cur.pos < line.size() && (std::isalnum(static_cast<unsigned char>(line[cur.pos])) || line[cur.pos] == '_'))
      ++cur.pos;
    const std::string key = line.substr(start, cur.pos - start);
    if (key.empty() || std::isdigit(static_cast<unsigned char>(key[0]))) cur.fail("expected a key");
    if (cur.peek() != '=') cur.fail("expected '=' after key '" + key + "'");
    ++cur.pos;
    if (cur.done()) cur.fail("missing value for key '" + key + "'");
    ConfigValue value = cur.read_value();
    if (!cur.done()) cur.fail("unexpected text after the value of '" + key + "'");
    if (cfg.entries_.count(key)) cur.fail("duplicate key '" + key + "'");
    cfg.entries_[key] = {std::move(value), number};
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::ostringstream os;
  os << in.rdbuf();
  return parse(os.str(), path.string());
}

void Config::set(const std::string& key, ConfigValue value) {
  entries_[key] = {std::move(value), 0};
}

std::string Config::where(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end() || it->second.line == 0) return "command line: key '" + key + "'";
  return source_ + ":" + std::to_string(it->second.line) + ": key '" + key + "'";
}

void Config::reject_unknown(const std::set<std::string>& allowed, const std::string& experiment) const {
  std::string message;
  for (const auto& [key, entry] : entries_) {
    if (allowed.count(key)) continue;
    if (!message.empty()) message += "\n";
    message += where(key) + " is not recognized by experiment '" + experiment + "'";
  }
  if (message.empty()) return;
  message += "\naccepted keys:";
  for (const auto& k : allowed) message += " " + k;
  throw ConfigError(message);
}

nlohmann::json Config::resolved_with_unread() const {
  nlohmann::json out = resolved_;
  for (const auto& [key, entry] : entries_) {
    if (out.contains(key)) continue;
    std::visit([&](const auto& v) { out[key] = v; }, entry.value);
  }
  return out;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) {
  auto v = get_optional_string(key);
  const std::string out = v ? *v : fallback;
  resolved_[key] = out;
  return out;
}

std::optional<std::string> Config::get_optional_string(const std::string& key) {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  if (const auto* s = std::get_if<std::string>(&it->second.value)) {
    resolved_[key] = *s;
    return *s;
  }
  throw ConfigError(where(key) + ": expected a string, got " + type_name(it->second.value));
}

double Config::get_number(const std::string& key, double fallback) {
  auto v = get_optional_number(key);
  const double out = v ? *v : fallback;
  resolved_[key] = out;
  return out;
}

std::optional<double> Config::get_optional_number(const std::string& key) {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  if (const auto* d = std::get_if<double>(&it->second.value)) {
    resolved_[key] = *d;
    return *d;
  }
  throw ConfigError(where(key) + ": expected a number, got " + type_name(it->second.value));
}

int Config::get_int(const std::string& key, int fallback) {
  const double v = get_number(key, fallback);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError(where(key) + ": expected an integer");
  return static_cast<int>(v);
}

std::vector<double> Config::get_numbers(const std::string& key, const std::vector<double>& fallback) {
  std::vector<double> out = fallback;
  const auto it = entries_.find(key);
  if (it != entries_.end()) {
    const auto& value = it->second.value;
    if (const auto* d = std::get_if<double>(&value)) out = {*d};
    else if (const auto* a = std::get_if<std::vector<double>>(&value)) out = *a;
    else if (const auto* s = std::get_if<std::vector<std::string>>(&value); s && s->empty()) out.clear();
    else throw ConfigError(where(key) + ": expected a number or an array of numbers, got " + type_name(value));
  }
  resolved_[key] = out;
  return out;
}

std::vector<int> Config::get_ints(const std::string& key, const std::vector<int>& fallback) {
  const std::vector<double> raw = get_numbers(key, std::vector<double>(fallback.begin(), fallback.end()));
  std::vector<int> out;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] != std::floor(raw[i]) || std::abs(raw[i]) > 1e9)
      throw ConfigError(where(key) + "[" + std::to_string(i) + "]: expected an integer");
    out.push_back(static_cast<int>(raw[i]));
  }
  resolved_[key] = out;
  return out;
}

std::vector<std::string> Config::get_strings(const std::string& key, const std::vector<std::string>& fallback) {
  std::vector<std::string> out = fallback;
  const auto it = entries_.find(key);
  if (it != entries_.end()) {
    const auto& value = it->second.value;
    if (const auto* s = std::get_if<std::string>(&value)) out = {*s};
    else if (const auto* a = std::get_if<std::vector<std::string>>(&value)) out = *a;
    else if (const auto* d = std::get_if<std::vector<double>>(&value); d && d->empty()) out.clear();
    else throw ConfigError(where(key) + ": expected a string or an array of strings, got " + type_name(value));
  }
  resolved_[key] = out;
  return out;
}

}  // namespace warpiso::cli
