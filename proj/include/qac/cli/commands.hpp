#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "qac/cli/config.hpp"

namespace qac::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitStatus : int { kExitOk = 0, kExitConfig = 2, kExitNumerical = 3 };

struct RunReport {
  std::vector<std::string> outputs;  ///< file names relative to the output directory
  std::size_t rows = 0;
  std::size_t converged_rows = 0;
  Config failures = Config::array();
  Config summary = Config::object();
};

struct Command {
  std::string name;
  std::string help;
  std::vector<KeySpec> keys;
  Config defaults;
  std::function<RunReport(const Config&, const std::filesystem::path&)> run;
};

const std::vector<Command>& commands();
const Command& find_command(const std::string& name);

/// Runs one command into `out_dir` and writes manifest.json next to its CSV files.
int execute(const Command& command, const Config& resolved, const std::filesystem::path& out_dir);

struct RecipeStep {
  std::string subdir;
  std::string command;
  Config overrides;
};

struct Recipe {
  std::string name;
  std::string help;
  std::vector<RecipeStep> steps;
};

const std::vector<Recipe>& recipes();

/// Runs every step of a recipe under out_dir/<recipe>/<step>; returns the worst exit status.
int run_recipe(const Recipe& recipe, const std::filesystem::path& out_dir);

/// Entry point of the qac executable.
int run_cli(int argc, char** argv);

}  // namespace qac::cli
