#include "app/config.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace chainctl::cli {

using nlohmann::json;

const std::vector<KeySpec>& config_keys() {
  static const std::vector<KeySpec> keys = {
      {"N", ValueType::Int, "number of spins"},
      {"J", ValueType::Double, "mean coupling strength"},
      {"n", ValueType::Int, "excitation subspace (default: largest)"},
      {"bond_offsets", ValueType::DoubleList, "fractional bond offsets eps_1..eps_{N-1}"},
      {"xi", ValueType::Double, "control leakage length (0: field on spin 1 only)"},
      {"p", ValueType::Int, "number of pulse steps"},
      {"dt", ValueType::Double, "pulse step duration"},
      {"t_f", ValueType::Double, "total pulse duration"},
      {"bound", ValueType::Double, "amplitude bound |B| <= bound"},
      {"init", ValueType::String, "initial pulse: random or constant"},
      {"init_base", ValueType::Double, "initial pulse offset"},
      {"init_noise", ValueType::Double, "initial pulse noise amplitude"},
      {"max_iterations", ValueType::Int, "optimizer iteration limit"},
      {"gradient_tol", ValueType::Double, "projected gradient norm stop"},
      {"fidelity_change_tol", ValueType::Double, "per-iteration fidelity change stop"},
      {"restarts", ValueType::Int, "optimizations per problem"},
      {"fidelity_floor", ValueType::Double, "fidelity required for exit status 0"},
      {"kT", ValueType::Double, "temperature k_B T / J of the initial ensemble"},
      {"seed", ValueType::UInt, "master seed"},
      {"jobs", ValueType::Int, "worker threads"},
      {"out", ValueType::String, "output directory"},
      {"format", ValueType::String, "csv, json or both"},
      {"pulse", ValueType::String, "pulse JSON file"},
      {"grid", ValueType::DoubleList, "sweep parameter values"},
      {"samples", ValueType::Int, "disorder samples per grid point"},
      {"reoptimize", ValueType::Bool, "optimize per grid point or sample"},
      {"model", ValueType::String, "dephasing model: end_spins or all_spins"},
      {"lindblad_tol", ValueType::Double, "concurrence convergence tolerance of the Lindblad integrator"},
      {"h0", ValueType::String, "drift operator JSON file"},
      {"h1", ValueType::String, "control operator JSON file"},
      {"lie_tol", ValueType::Double, "Lie closure independence tolerance"},
      {"regularity_tol", ValueType::Double, "regularity criterion tolerance"},
      {"max_lie_dim", ValueType::Int, "largest subspace dimension for the Lie closure"},
      {"export_operators", ValueType::Bool, "write h0.json and h1.json"},
      {"N_list", ValueType::IntList, "chain lengths for the min-time scan"},
      {"threshold", ValueType::Double, "fidelity threshold defining T_C"},
      {"durations", ValueType::DoubleList, "min-time grid (ascending)"},
      {"t_min", ValueType::Double, "min-time grid start"},
      {"t_max", ValueType::Double, "min-time grid end"},
      {"t_step", ValueType::Double, "min-time grid spacing"},
      {"stop_at_critical", ValueType::Bool, "stop a min-time scan at the first duration reaching the threshold"},
  };
  return keys;
}

namespace {

const KeySpec* find_key(const std::string& name) {
  for (const auto& k : config_keys()) {
    if (name == k.name) return &k;
  }
  return nullptr;
}

int line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

const char* type_name(ValueType t) {
  switch (t) {
    case ValueType::Int:
      return "an integer";
    case ValueType::UInt:
      return "a non-negative integer";
    case ValueType::Double:
      return "a number";
    case ValueType::Bool:
      return "a boolean";
    case ValueType::String:
      return "a string";
    case ValueType::DoubleList:
      return "a list of numbers";
    case ValueType::IntList:
      return "a list of integers";
  }
  return "a value";
}

bool matches(const json& v, ValueType t) {
  switch (t) {
    case ValueType::Int:
      return v.is_number_integer();
    case ValueType::UInt:
      return v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0);
    case ValueType::Double:
      return v.is_number();
    case ValueType::Bool:
      return v.is_boolean();
    case ValueType::String:
      return v.is_string();
    case ValueType::DoubleList:
      return v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_number(); });
    case ValueType::IntList:
      return v.is_array() &&
             std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_number_integer(); });
  }
  return false;
}

// Offset of the first `"key"` that is followed by a colon.
std::size_t key_offset(const std::string& text, const std::string& key) {
  const std::string quoted = "\"" + key + "\"";
  for (std::size_t pos = text.find(quoted); pos != std::string::npos; pos = text.find(quoted, pos + 1)) {
    std::size_t after = pos + quoted.size();
    while (after < text.size() && std::isspace(static_cast<unsigned char>(text[after]))) ++after;
    if (after < text.size() && text[after] == ':') return pos;
  }
  return 0;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

RunConfig RunConfig::parse(const std::string& text, const std::string& source) {
  RunConfig cfg;
  cfg.source_ = source;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(source + ":" + std::to_string(line_of_offset(text, e.byte)) +
                      ": invalid JSON (" + e.what() + ")");
  }
  if (!doc.is_object()) throw ConfigError(source + ":1: configuration must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    cfg.lines_[key] = line_of_offset(text, key_offset(text, key));
    const KeySpec* spec = find_key(key);
    if (spec == nullptr) cfg.fail(key, "unknown key '" + key + "'");
    if (!matches(value, spec->type)) cfg.fail(key, "'" + key + "' must be " + type_name(spec->type));
    cfg.values_[key] = value;
  }
  return cfg;
}

void RunConfig::set_flag(const std::string& key, const std::string& value) {
  const KeySpec* spec = find_key(key);
  if (spec == nullptr) throw ConfigError("--" + key + ": unknown option");
  lines_.erase(key);
  const auto bad = [&]() -> ConfigError {
    return ConfigError("--" + key + ": '" + value + "' is not " + type_name(spec->type));
  };
  try {
    std::size_t used = 0;
    switch (spec->type) {
      case ValueType::Int: {
        const long long v = std::stoll(value, &used);
        if (used != value.size()) throw bad();
        values_[key] = v;
        break;
      }
      case ValueType::UInt: {
        if (!value.empty() && value[0] == '-') throw bad();
        const unsigned long long v = std::stoull(value, &used);
        if (used != value.size()) throw bad();
        values_[key] = static_cast<std::uint64_t>(v);
        break;
      }
      case ValueType::Double: {
        const double v = std::stod(value, &used);
        if (used != value.size()) throw bad();
        values_[key] = v;
        break;
      }
      case ValueType::Bool:
        if (value == "true" || value == "1") {
          values_[key] = true;
        } else if (value == "false" || value == "0") {
          values_[key] = false;
        } else {
          throw bad();
        }
        break;
      case ValueType::String:
        values_[key] = value;
        break;
      case ValueType::DoubleList: {
        json arr = json::array();
        for (const auto& item : split_list(value)) {
          const double v = std::stod(item, &used);
          if (used != item.size()) throw bad();
          arr.push_back(v);
        }
        values_[key] = std::move(arr);
        break;
      }
      case ValueType::IntList: {
        json arr = json::array();
        for (const auto& item : split_list(value)) {
          const long long v = std::stoll(item, &used);
          if (used != item.size()) throw bad();
          arr.push_back(v);
        }
        values_[key] = std::move(arr);
        break;
      }
    }
  } catch (const std::invalid_argument&) {
    throw bad();
  } catch (const std::out_of_range&) {
    throw bad();
  }
}

std::string RunConfig::where(const std::string& key) const {
  if (const auto it = lines_.find(key); it != lines_.end()) {
    return source_ + ":" + std::to_string(it->second) + ": ";
  }
  if (values_.contains(key)) return "--" + key + ": ";
  return "";
}

void RunConfig::fail(const std::string& key, const std::string& message) const {
  throw ConfigError(where(key) + message);
}

std::optional<long long> RunConfig::get_int(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return values_.at(key).get<long long>();
}

std::optional<std::uint64_t> RunConfig::get_uint(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return values_.at(key).get<std::uint64_t>();
}

std::optional<double> RunConfig::get_double(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return values_.at(key).get<double>();
}

std::optional<bool> RunConfig::get_bool(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return values_.at(key).get<bool>();
}

std::optional<std::string> RunConfig::get_string(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return values_.at(key).get<std::string>();
}

std::optional<std::vector<double>> RunConfig::get_doubles(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return values_.at(key).get<std::vector<double>>();
}

std::optional<std::vector<int>> RunConfig::get_ints(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return values_.at(key).get<std::vector<int>>();
}

}  // namespace chainctl::cli
