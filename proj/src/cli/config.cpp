#include "qac/cli/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qac/error.hpp"
#include "qac/numeric.hpp"

namespace qac::cli {

const std::vector<KeySpec>& model_keys() {
  static const std::vector<KeySpec> keys{
      {"p", KeyKind::integer, "interaction order p >= 2"},
      {"C", KeyKind::integer, "number of physical copies"},
      {"gamma", KeyKind::real, "penalty strength"},
      {"epsilon", KeyKind::real, "penalty transverse-field ratio"},
      {"Gamma", KeyKind::real, "transverse field"},
      {"T", KeyKind::real, "temperature (0 selects the zero-temperature branch)"},
      {"kappa", KeyKind::text, "penalty field convention: per_block or per_copy"},
      {"method", KeyKind::text, "free-energy evaluator: auto, closed, trace, zeroT"},
      {"workers", KeyKind::integer, "worker threads (0 = all cores)"},
  };
  return keys;
}

Config load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  try {
    Config c = Config::parse(in);
    if (!c.is_object()) throw ConfigError("config file must hold a JSON object");
    return c;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file " + path.string() + ": " + e.what());
  }
}

namespace {

double to_number(const std::string& text, const std::string& key) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("--" + key + ": '" + text + "' is not a number");
  }
  if (used != text.size()) throw ConfigError("--" + key + ": '" + text + "' is not a number");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

void require_increasing(const std::vector<double>& grid, const std::string& key) {
  if (grid.empty()) throw ConfigError(key + ": grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw ConfigError(key + ": grid values must be finite");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw ConfigError(key + ": grid must be strictly increasing");
  }
}

}  // namespace

Config parse_flag_value(const KeySpec& key, const std::string& text) {
  switch (key.kind) {
    case KeyKind::integer: {
      const double v = to_number(text, key.name);
      if (v != std::floor(v)) throw ConfigError("--" + key.name + " expects an integer");
      return static_cast<long long>(v);
    }
    case KeyKind::real: return to_number(text, key.name);
    case KeyKind::text:
    case KeyKind::grid: return text;
  }
  return text;
}

Config merge(Config base, const Config& top) {
  for (auto it = top.begin(); it != top.end(); ++it) {
    if (!base.contains(it.key())) throw ConfigError("unknown config key '" + it.key() + "'");
    base[it.key()] = it.value();
  }
  return base;
}

std::vector<double> parse_grid(const Config& value, const std::string& key) {
  std::vector<double> grid;
  if (value.is_number()) {
    grid.push_back(value.get<double>());
  } else if (value.is_array()) {
    for (const auto& v : value) {
      if (!v.is_number()) throw ConfigError(key + ": grid entries must be numbers");
      grid.push_back(v.get<double>());
    }
  } else if (value.is_string()) {
    const auto text = value.get<std::string>();
    const auto colon = split(text, ':');
    if (colon.size() == 3) {
      const double lo = to_number(colon[0], key);
      const double hi = to_number(colon[1], key);
      const double step = to_number(colon[2], key);
      if (!(step > 0.0) || hi < lo) throw ConfigError(key + ": range needs lo <= hi and step > 0");
      const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
      for (std::size_t i = 0; i < n; ++i) grid.push_back(lo + step * static_cast<double>(i));
    } else if (colon.size() == 1) {
      for (const auto& part : split(text, ',')) grid.push_back(to_number(part, key));
    } else {
      throw ConfigError(key + ": expected lo:hi:step or a comma list");
    }
  } else {
    throw ConfigError(key + ": unsupported grid value");
  }
  require_increasing(grid, key);
  return grid;
}

std::vector<double> parse_m_grid(const Config& value, double lo) {
  if (value.is_string()) {
    const auto text = value.get<std::string>();
    if (!text.empty() && text.find_first_not_of("0123456789") == std::string::npos) {
      return parse_m_grid(Config(std::stoll(text)), lo);
    }
  }
  if (value.is_number_integer()) {
    const auto n = value.get<long long>();
    if (n < 2) throw ConfigError("m-grid: point count must be >= 2");
    return uniform_grid(lo, 1.0, static_cast<std::size_t>(n));
  }
  auto grid = parse_grid(value, "m-grid");
  if (grid.front() < -1.0 || grid.back() > 1.0) throw ConfigError("m-grid: values must lie in [-1, 1]");
  return grid;
}

ModelParams model_from_config(const Config& config) {
  ModelParams params;
  try {
    params.p = config.at("p").get<int>();
    params.C = config.at("C").get<int>();
    params.gamma = config.at("gamma").get<double>();
    params.epsilon = config.at("epsilon").get<double>();
    params.Gamma = config.at("Gamma").get<double>();
    params.beta = beta_from_temperature(config.at("T").get<double>());
    const auto kappa = config.at("kappa").get<std::string>();
    if (kappa == "per_block") {
      params.convention = PenaltyFieldConvention::per_block;
    } else if (kappa == "per_copy") {
      params.convention = PenaltyFieldConvention::per_copy;
    } else {
      throw ConfigError("kappa must be per_block or per_copy");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("model parameters: ") + e.what());
  }
  params.validate();
  return params;
}

std::optional<Method> method_from_config(const Config& config) {
  const auto name = config.at("method").get<std::string>();
  if (name == "auto") return std::nullopt;
  try {
    return method_from_string(name);
  } catch (const InvalidParameter& e) {
    throw ConfigError(e.what());
  }
}

std::filesystem::path resolve_output_dir(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return *flag;
  if (const char* env = std::getenv("QAC_OUTPUT_DIR"); env != nullptr && *env != '\0') return env;
  return "qac-out";
}

}  // namespace qac::cli
