#pragma once

// Flat key = value experiment configs.
//
//   # comment
//   experiment = "chain"
//   graph = ["ellipsoid(2, 1.5, 1)", "sphere(1)"]
//   k = 2
//
// Values are double-quoted strings, numbers, or homogeneous arrays of
// either. Getters record every resolved value (defaults included) so a run
// can embed the exact configuration it used.

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace warpiso::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using ConfigValue = std::variant<double, std::string, std::vector<double>, std::vector<std::string>>;

class Config {
 public:
  Config() = default;
  static Config parse(const std::string& text, const std::string& source);
  static Config load(const std::filesystem::path& path);

  const std::string& source() const noexcept { return source_; }
  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  /// Replaces or adds a value (command-line overrides).
  void set(const std::string& key, ConfigValue value);

  /// ConfigError naming every key outside the allowed set.
  void reject_unknown(const std::set<std::string>& allowed, const std::string& experiment) const;

  std::string get_string(const std::string& key, const std::string& fallback);
  std::optional<std::string> get_optional_string(const std::string& key);
  double get_number(const std::string& key, double fallback);
  std::optional<double> get_optional_number(const std::string& key);
  int get_int(const std::string& key, int fallback);
  /// A scalar is promoted to a one-element array.
  std::vector<double> get_numbers(const std::string& key, const std::vector<double>& fallback);
  std::vector<int> get_ints(const std::string& key, const std::vector<int>& fallback);
  std::vector<std::string> get_strings(const std::string& key, const std::vector<std::string>& fallback);

  /// Every value read so far, including defaults.
  const nlohmann::json& resolved() const noexcept { return resolved_; }
  /// resolved() plus any given key no getter has read.
  nlohmann::json resolved_with_unread() const;
  void record(const std::string& key, nlohmann::json value) { resolved_[key] = std::move(value); }

 private:
  struct Entry {
    ConfigValue value;
    int line = 0;
  };
  std::string where(const std::string& key) const;

  std::string source_;
  std::map<std::string, Entry> entries_;
  nlohmann::json resolved_ = nlohmann::json::object();
};

}  // namespace warpiso::cli
