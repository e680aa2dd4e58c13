#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace chainctl::cli {

/// Invalid or inconsistent configuration; maps to exit status 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ValueType { Int, UInt, Double, Bool, String, DoubleList, IntList };

struct KeySpec {
  const char* name;
  ValueType type;
  const char* help;
};

/// Every recognised configuration key; each one is also a --flag.
const std::vector<KeySpec>& config_keys();

/// Flat JSON configuration merged from a file and command-line flags.
class RunConfig {
 public:
  /// Parses `text` (named `source` in messages). Unknown keys and type
  /// mismatches are reported with their line number.
  static RunConfig parse(const std::string& text, const std::string& source);
  static RunConfig empty() { return RunConfig(); }

  /// Sets `key` from the textual flag value; flags win over the file.
  void set_flag(const std::string& key, const std::string& value);

  bool has(const std::string& key) const { return values_.contains(key); }

  std::optional<long long> get_int(const std::string& key) const;
  std::optional<std::uint64_t> get_uint(const std::string& key) const;
  std::optional<double> get_double(const std::string& key) const;
  std::optional<bool> get_bool(const std::string& key) const;
  std::optional<std::string> get_string(const std::string& key) const;
  std::optional<std::vector<double>> get_doubles(const std::string& key) const;
  std::optional<std::vector<int>> get_ints(const std::string& key) const;

  void set(const std::string& key, nlohmann::json value) { values_[key] = std::move(value); }

  /// "source:line: " for keys read from the file, "--key: " for flags.
  std::string where(const std::string& key) const;
  [[noreturn]] void fail(const std::string& key, const std::string& message) const;

  /// Merged configuration without execution-only keys (output directory,
  /// worker count), which do not affect any result.
  nlohmann::json semantic() const {
    nlohmann::json out = values_;
    out.erase("out");
    out.erase("jobs");
    return out;
  }
  /// Canonical (sorted-key, compact) JSON of semantic().
  std::string canonical() const { return semantic().dump(); }
  const nlohmann::json& values() const { return values_; }

 private:
  nlohmann::json values_ = nlohmann::json::object();
  std::map<std::string, int> lines_;
  std::string source_;
};

}  // namespace chainctl::cli
