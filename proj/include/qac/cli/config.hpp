#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qac/free_energy.hpp"
#include "qac/model.hpp"

namespace qac::cli {

using Config = nlohmann::json;

/// Bad configuration (exit status 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class KeyKind { integer, real, text, grid };

struct KeySpec {
  std::string name;
  KeyKind kind;
  std::string help;
};

/// Keys shared by every physics subcommand.
const std::vector<KeySpec>& model_keys();

/// Reads a JSON object from disk.
Config load_config_file(const std::filesystem::path& path);

/// Converts a flag string into the JSON value for its key kind.
Config parse_flag_value(const KeySpec& key, const std::string& text);

/// Overlays `top` on `base`; rejects keys absent from `base`.
Config merge(Config base, const Config& top);

/// Grid from a JSON array, "lo:hi:step", "a,b,c" or a single number.
/// Requires a non-empty, strictly increasing result.
std::vector<double> parse_grid(const Config& value, const std::string& key);

/// Grid for m: an integer count N means N uniform points on [lo, 1].
std::vector<double> parse_m_grid(const Config& value, double lo);

ModelParams model_from_config(const Config& config);

std::optional<Method> method_from_config(const Config& config);

/// --out, else $QAC_OUTPUT_DIR, else ./qac-out.
std::filesystem::path resolve_output_dir(const std::optional<std::string>& flag);

}  // namespace qac::cli
