#include "qac/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include <CLI11.hpp>

#include "qac/cli/csv.hpp"
#include "qac/error.hpp"
#include "qac/instanton.hpp"
#include "qac/landscape.hpp"
#include "qac/oracle.hpp"
#include "qac/perturbation.hpp"
#include "qac/phase.hpp"

namespace qac::cli {

namespace fs = std::filesystem;

namespace {

Config model_defaults(int p, int C, double gamma, double epsilon, double Gamma, double T) {
  return Config{{"p", p},          {"C", C},         {"gamma", gamma},          {"epsilon", epsilon},
                {"Gamma", Gamma},  {"T", T},         {"kappa", "per_block"},    {"method", "auto"},
                {"workers", 0}};
}

std::vector<KeySpec> with_model(std::vector<KeySpec> extra) {
  std::vector<KeySpec> keys = model_keys();
  keys.insert(keys.end(), extra.begin(), extra.end());
  return keys;
}

std::size_t workers_from(const Config& config) {
  const auto w = config.at("workers").get<long long>();
  if (w < 0) throw ConfigError("workers must be >= 0");
  return static_cast<std::size_t>(w);
}

Bracket window_from(const Config& config, const std::string& key) {
  const auto grid = parse_grid(config.at(key), key);
  if (grid.size() != 2) throw ConfigError(key + ": expected two values lo,hi");
  return {grid[0], grid[1]};
}

double positive(const Config& config, const std::string& key) {
  const double v = config.at(key).get<double>();
  if (!(v > 0.0)) throw ConfigError(key + " must be positive");
  return v;
}

void count(RunReport& report, bool converged) {
  ++report.rows;
  if (converged) ++report.converged_rows;
}

// ---------------------------------------------------------------------------

RunReport run_free_energy(const Config& config, const fs::path& out) {
  const ModelParams params = model_from_config(config);
  const Method method = method_from_config(config).value_or(default_method(params));
  const auto grid = parse_m_grid(config.at("m-grid"), ScanOptions{}.lower_end(params));
  const FreeEnergyCurve curve = sample_free_energy(params, method, grid, workers_from(config));
  RunReport report;
  CsvTable table({"m", "F", "method", "converged"});
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    const bool ok = std::isfinite(curve.values[i]);
    table.row().add(curve.grid[i]).add(curve.values[i]).add(std::string(to_string(method))).add(ok);
    count(report, ok);
  }
  table.write(out / "free_energy.csv");
  report.outputs.push_back("free_energy.csv");
  report.summary["method"] = std::string(to_string(method));
  return report;
}

RunReport run_extrema(const Config& config, const fs::path& out) {
  const ModelParams params = model_from_config(config);
  const Method method = method_from_config(config).value_or(default_method(params));
  ScanOptions scan;
  const auto points = config.at("grid-points").get<long long>();
  if (points < 3) throw ConfigError("grid-points must be >= 3");
  scan.grid_points = static_cast<std::size_t>(points);
  const ExtremaSet ex = find_extrema(params, method, scan);

  struct Entry {
    double m;
    double F;
    std::string kind;
    std::string label;
  };
  std::vector<Entry> entries;
  for (const auto& mn : ex.minima) entries.push_back({mn.m, mn.F, "minimum", std::string(to_string(mn.label))});
  for (const auto& mx : ex.maxima) entries.push_back({mx.m, mx.F, "maximum", "max"});
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.m < b.m; });

  RunReport report;
  CsvTable table({"m", "F", "kind", "label", "converged"});
  for (const auto& e : entries) {
    table.row().add(e.m).add(e.F).add(e.kind).add(e.label).add(ex.converged);
    count(report, ex.converged);
  }
  table.write(out / "extrema.csv");
  report.outputs.push_back("extrema.csv");
  const Minimum& g = ex.global_minimum();
  report.summary["global_minimum"] = {{"m", g.m}, {"F", g.F}, {"label", std::string(to_string(g.label))}};
  return report;
}

void write_phase_lines(const PhaseDiagram& diagram, const fs::path& path, RunReport& report) {
  CsvTable table({"sweep_value", "Gamma_c", "order", "m_before", "m_after", "delta_F", "delta_m", "branch_label",
                  "converged"});
  for (const auto& line : diagram.lines) {
    for (std::size_t i = 0; i < line.points.size(); ++i) {
      const TransitionPoint& tp = line.points[i];
      const double dF = tp.barrier ? tp.barrier->delta_F : 0.0;
      const double dm = tp.barrier ? tp.barrier->delta_m : 0.0;
      table.row()
          .add(line.sweep_values[i])
          .add(tp.params.Gamma)
          .add(std::string(to_string(tp.order)))
          .add(tp.m_before)
          .add(tp.m_after)
          .add(dF)
          .add(dm)
          .add(std::string(to_string(line.branch)))
          .add(tp.converged);
      count(report, tp.converged);
    }
  }
  table.write(path);
  for (const auto& f : diagram.failures) {
    report.failures.push_back({{"sweep_value", f.sweep_value}, {"message", f.message},
                               {"no_transition", f.no_transition}});
  }
  Config lines = Config::object();
  for (const auto& line : diagram.lines) {
    lines[std::string(to_string(line.branch))] = {{"points", line.points.size()},
                                                  {"first_sweep_value", line.sweep_values.front()},
                                                  {"last_sweep_value", line.sweep_values.back()}};
  }
  report.summary["lines"] = lines;
}

SweepSpec sweep_from(const Config& config) {
  SweepSpec spec;
  spec.Gamma_window = window_from(config, "Gamma-window");
  spec.Gamma_step = positive(config, "Gamma-step");
  spec.method = method_from_config(config);
  return spec;
}

RunReport run_transition(const Config& config, const fs::path& out) {
  const ModelParams params = model_from_config(config);
  SweepSpec spec = sweep_from(config);
  spec.variable = SweepVariable::temperature;
  spec.values = {config.at("T").get<double>()};
  RunReport report;
  write_phase_lines(trace_phase_line(params, spec), out / "transitions.csv", report);
  report.outputs.push_back("transitions.csv");
  return report;
}

std::string default_sweep_values(SweepVariable variable) {
  switch (variable) {
    case SweepVariable::temperature: return "0.005:0.3:0.005";
    case SweepVariable::gamma: return "0.01:2:0.01";
    case SweepVariable::epsilon: return "0:0.1:0.0025";
  }
  return "";
}

RunReport run_phase_line(const Config& config, const fs::path& out) {
  const ModelParams params = model_from_config(config);
  SweepSpec spec = sweep_from(config);
  try {
    spec.variable = sweep_variable_from_string(config.at("sweep").get<std::string>());
  } catch (const InvalidParameter& e) {
    throw ConfigError(e.what());
  }
  Config values = config.at("values");
  if (values == "auto") values = default_sweep_values(spec.variable);
  spec.values = parse_grid(values, "values");
  RunReport report;
  write_phase_lines(trace_phase_line(params, spec), out / "phase_line.csv", report);
  report.outputs.push_back("phase_line.csv");
  report.summary["sweep"] = std::string(to_string(spec.variable));
  return report;
}

RunReport run_optimal_gamma(const Config& config, const fs::path& out) {
  const ModelParams params = model_from_config(config);
  const auto gammas = parse_grid(config.at("gamma-grid"), "gamma-grid");
  const auto rows = optimal_gamma_scan(params, gammas, window_from(config, "Gamma-window"),
                                       positive(config, "Gamma-step"));
  RunReport report;
  CsvTable table({"gamma", "Gamma_c", "m_large", "delta_F", "delta_m", "converged"});
  std::optional<std::size_t> min_dF;
  std::optional<std::size_t> min_m;
  bool monotone = true;
  std::optional<double> last_Gc;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const bool ok = r.converged && r.error.empty();
    const double nan = std::nan("");
    table.row()
        .add(r.gamma)
        .add(ok ? r.Gamma_c : nan)
        .add(ok ? r.m_large : nan)
        .add(ok ? r.delta_F : nan)
        .add(ok ? r.delta_m : nan)
        .add(ok);
    count(report, ok);
    if (!r.error.empty()) report.failures.push_back({{"sweep_value", r.gamma}, {"message", r.error}});
    if (!ok) continue;
    if (!min_dF || r.delta_F < rows[*min_dF].delta_F) min_dF = i;
    if (!min_m || r.m_large < rows[*min_m].m_large) min_m = i;
    if (last_Gc && !(r.Gamma_c > *last_Gc)) monotone = false;
    last_Gc = r.Gamma_c;
  }
  table.write(out / "optimal_gamma.csv");
  report.outputs.push_back("optimal_gamma.csv");
  report.summary["Gamma_c_monotone_increasing"] = monotone;
  if (min_dF) report.summary["gamma_at_min_delta_F"] = rows[*min_dF].gamma;
  if (min_m) report.summary["gamma_at_min_m_large"] = rows[*min_m].gamma;
  return report;
}

RunReport run_instanton(const Config& config, const fs::path& out) {
  const auto p_grid = parse_grid(config.at("p-grid"), "p-grid");
  std::vector<int> ps;
  for (double p : p_grid) {
    if (p != std::floor(p) || p < 2) throw ConfigError("p-grid: entries must be integers >= 2");
    ps.push_back(static_cast<int>(p));
  }
  const double beta = positive(config, "beta");
  struct Outcome {
    std::optional<InstantonReport> report;
    std::string error;
  };
  const auto outcomes = parallel_map<Outcome>(
      ps.size(),
      [&](std::size_t i) {
        try {
          return Outcome{instanton_report(ps[i], beta), {}};
        } catch (const std::exception& e) {
          return Outcome{std::nullopt, e.what()};
        }
      },
      workers_from(config));

  RunReport report;
  CsvTable table({"p", "beta", "Gamma_c", "m1", "m2", "overlap_coeff", "area_coeff", "converged"});
  Config bound_holds = Config::array();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const double nan = std::nan("");
    if (!outcomes[i].report) {
      table.row().add(ps[i]).add(beta).add(nan).add(nan).add(nan).add(nan).add(nan).add(false);
      count(report, false);
      report.failures.push_back({{"sweep_value", ps[i]}, {"message", outcomes[i].error}});
      continue;
    }
    const InstantonReport& r = *outcomes[i].report;
    table.row().add(r.p).add(r.beta).add(r.Gamma_c).add(r.m1).add(r.m2).add(r.overlap_coeff).add(r.area_coeff).add(
        r.converged);
    count(report, r.converged);
    if (r.area_bounds_overlap()) bound_holds.push_back(r.p);
  }
  table.write(out / "instanton.csv");
  report.outputs.push_back("instanton.csv");
  report.summary["p_with_area_above_overlap"] = bound_holds;
  return report;
}

RunReport run_perturbation(const Config& config, const fs::path& out) {
  const ModelParams params = model_from_config(config);
  const auto grid = parse_m_grid(config.at("m-grid"), 0.0);
  if (grid.front() < 0.0) throw ConfigError("m-grid: perturbation requires m >= 0");
  const auto profile = correction_profile(params, grid);
  RunReport report;
  CsvTable table({"m", "E_plus", "E_minus", "delta_E", "validity", "converged"});
  std::optional<std::size_t> peak;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& r = profile[i];
    table.row().add(grid[i]).add(r.E_plus).add(r.E_minus).add(r.delta_E).add(std::string(to_string(r.validity))).add(
        true);
    count(report, true);
    if (r.validity == Validity::nondegenerate && (!peak || r.delta_E > profile[*peak].delta_E)) peak = i;
  }
  table.write(out / "perturbation.csv");
  report.outputs.push_back("perturbation.csv");
  report.summary["nondegenerate_gap_factor"] = kNondegenerateGapFactor;
  if (peak) report.summary["m_at_max_nondegenerate_delta_E"] = grid[*peak];
  report.summary["degenerate_warning"] = delta_E_m0(params).warning;
  return report;
}

RunReport run_oracle(const Config& config, const fs::path& out) {
  const ModelParams params = model_from_config(config);
  const auto n_grid = parse_grid(config.at("N"), "N");
  std::optional<std::vector<double>> Gamma_grid;
  if (config.at("Gamma-grid") != "none") Gamma_grid = parse_grid(config.at("Gamma-grid"), "Gamma-grid");

  const Method method = default_method(params);
  TransitionOptions topts;
  const ExtremaSet ex = find_extrema(params, method, transition_scan(params, topts));
  const double meanfield = ex.global_minimum().F;
  std::optional<BarrierMetrics> barrier;
  if (ex.minima.size() >= 2) {
    const Minimum& g = ex.global_minimum();
    const Minimum* other = nullptr;
    for (const auto& mn : ex.minima)
      if (&mn != &g && (other == nullptr || mn.F < other->F)) other = &mn;
    barrier = barrier_between(params, method, std::min(g.m, other->m), std::max(g.m, other->m));
  }

  RunReport report;
  CsvTable table({"N", "C", "F_per_site", "meanfield_F", "gap", "bound", "converged"});
  Config gamma_at_min = Config::object();
  for (double nd : n_grid) {
    if (nd != std::floor(nd) || nd < 1) throw ConfigError("N: entries must be positive integers");
    const int n = static_cast<int>(nd);
    const ExactSpectrumResult exact = exact_free_energy(params, n);
    double gap = spectral_gap(exact.spectrum);
    if (Gamma_grid) {
      const MinGapResult mg = exact_min_gap(params, *Gamma_grid, n);
      gap = mg.min_gap;
      gamma_at_min[std::to_string(n)] = mg.Gamma_at_min;
    }
    const double bound = barrier ? gap_bound(*barrier, n) : std::nan("");
    table.row().add(n).add(params.C).add(exact.F_per_site).add(meanfield).add(gap).add(bound).add(true);
    count(report, true);
    if (barrier && gap < bound) {
      report.summary["bound_violations"].push_back(n);
    }
  }
  table.write(out / "oracle.csv");
  report.outputs.push_back("oracle.csv");
  if (Gamma_grid) report.summary["Gamma_at_min_gap"] = gamma_at_min;
  report.summary["bound_note"] = "bound is nan when the mean-field landscape has a single minimum";
  return report;
}

RunReport run_branch_point(const Config& config, const fs::path& out) {
  const ModelParams params = model_from_config(config);
  RunReport report;
  CsvTable table({"gamma", "T_branch", "Gamma_branch", "m_small", "m_large", "converged"});
  try {
    const BranchPoint bp = locate_branch_point(params, window_from(config, "T-window"),
                                               window_from(config, "Gamma-window"));
    table.row().add(params.gamma).add(bp.temperature).add(bp.Gamma).add(bp.m_small).add(bp.m_large).add(true);
    count(report, true);
  } catch (const NumericalError& e) {
    const double nan = std::nan("");
    table.row().add(params.gamma).add(nan).add(nan).add(nan).add(nan).add(false);
    count(report, false);
    report.failures.push_back({{"sweep_value", params.gamma}, {"message", e.what()}});
  }
  table.write(out / "branch_point.csv");
  report.outputs.push_back("branch_point.csv");
  return report;
}

Config sweep_keys_defaults(Config base) {
  base["Gamma-window"] = "0.001,5";
  base["Gamma-step"] = 0.01;
  return base;
}

}  // namespace

const std::vector<Command>& commands() {
  static const std::vector<Command> list = [] {
    std::vector<Command> c;
    c.push_back({"free-energy", "sample F/C on an m grid",
                 with_model({{"m-grid", KeyKind::grid, "point count, lo:hi:step or list"}}),
                 [] {
                   auto d = model_defaults(2, 3, 0.5, 0.0, 1.0, 0.1);
                   d["m-grid"] = 4001;
                   return d;
                 }(),
                 run_free_energy});
    c.push_back({"extrema", "local minima and maxima of F",
                 with_model({{"grid-points", KeyKind::integer, "scan resolution"}}),
                 [] {
                   auto d = model_defaults(2, 3, 0.5, 0.0, 1.0, 0.1);
                   d["grid-points"] = 4001;
                   return d;
                 }(),
                 run_extrema});
    c.push_back({"transition", "critical fields at fixed T along a Gamma window",
                 with_model({{"Gamma-window", KeyKind::grid, "lo,hi"}, {"Gamma-step", KeyKind::real, "scan step"}}),
                 sweep_keys_defaults(model_defaults(2, 3, 0.5, 0.0, 1.0, 0.1)), run_transition});
    c.push_back({"phase-line", "transition lines along a T, gamma or epsilon sweep",
                 with_model({{"sweep", KeyKind::text, "T, gamma or epsilon"},
                             {"values", KeyKind::grid, "sweep values (auto picks a default range)"},
                             {"Gamma-window", KeyKind::grid, "lo,hi"},
                             {"Gamma-step", KeyKind::real, "scan step"}}),
                 [] {
                   auto d = sweep_keys_defaults(model_defaults(2, 3, 0.5, 0.0, 1.0, 0.1));
                   d["sweep"] = "gamma";
                   d["values"] = "auto";
                   return d;
                 }(),
                 run_phase_line});
    c.push_back({"optimal-gamma", "m0/m_large transition and barrier per gamma",
                 with_model({{"gamma-grid", KeyKind::grid, "penalty values"},
                             {"Gamma-window", KeyKind::grid, "lo,hi"},
                             {"Gamma-step", KeyKind::real, "scan step"}}),
                 [] {
                   auto d = model_defaults(4, 3, 0.5, 1.0, 1.0, 0.025);
                   d["gamma-grid"] = "0.5:8:0.25";
                   d["Gamma-window"] = "0.05,12";
                   d["Gamma-step"] = 0.02;
                   return d;
                 }(),
                 run_optimal_gamma});
    c.push_back({"instanton", "sharp-instanton and barrier-area coefficients of the gamma = 0 model",
                 {{"p-grid", KeyKind::grid, "interaction orders"},
                  {"beta", KeyKind::real, "inverse temperature"},
                  {"workers", KeyKind::integer, "worker threads (0 = all cores)"}},
                 Config{{"p-grid", "3:12:1"}, {"beta", 20.0}, {"workers", 0}}, run_instanton});
    c.push_back({"perturbation", "second-order penalty-field correction at T = 0",
                 with_model({{"m-grid", KeyKind::grid, "point count, lo:hi:step or list"}}),
                 [] {
                   auto d = model_defaults(4, 3, 0.5, 0.05, 2.0, 0.0);
                   d["m-grid"] = "0:1:0.01";
                   return d;
                 }(),
                 run_perturbation});
    c.push_back({"oracle", "exact diagonalization against the mean-field free energy",
                 with_model({{"N", KeyKind::grid, "logical qubit counts"},
                             {"Gamma-grid", KeyKind::grid, "fields for the minimal gap, or none"}}),
                 [] {
                   auto d = model_defaults(2, 3, 0.3, 0.0, 1.0, 0.5);
                   d["N"] = "2,3";
                   d["Gamma-grid"] = "none";
                   return d;
                 }(),
                 run_oracle});
    c.push_back({"branch-point", "temperature and field where three minima are degenerate",
                 with_model({{"T-window", KeyKind::grid, "lo,hi"}, {"Gamma-window", KeyKind::grid, "lo,hi"}}),
                 [] {
                   auto d = model_defaults(4, 3, 0.7, 0.0, 2.0, 0.05);
                   d["T-window"] = "0.005,0.2";
                   d["Gamma-window"] = "1.5,2.6";
                   return d;
                 }(),
                 run_branch_point});
    return c;
  }();
  return list;
}

const Command& find_command(const std::string& name) {
  for (const auto& c : commands())
    if (c.name == name) return c;
  throw ConfigError("unknown command '" + name + "'");
}

namespace {

void write_manifest(const fs::path& path, const Config& manifest) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << manifest.dump(2) << '\n';
}

Config temperature_fields(const Config& resolved) {
  Config out = Config::object();
  if (!resolved.contains("T")) {
    if (resolved.contains("beta")) out["beta"] = resolved["beta"];
    return out;
  }
  const double T = resolved["T"].get<double>();
  out["temperature"] = T;
  if (T == 0.0) {
    out["beta"] = "inf";
  } else {
    out["beta"] = 1.0 / T;
  }
  return out;
}

}  // namespace

int execute(const Command& command, const Config& resolved, const fs::path& out_dir) {
  Config manifest{{"tool", "qac"}, {"version", kToolVersion}, {"command", command.name}, {"config", resolved}};
  manifest.update(temperature_fields(resolved));
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    std::cerr << "error: cannot create " << out_dir.string() << ": " << ec.message() << '\n';
    return kExitConfig;
  }
  int status = kExitOk;
  try {
    const RunReport report = command.run(resolved, out_dir);
    manifest["outputs"] = report.outputs;
    manifest["rows"] = report.rows;
    manifest["converged_rows"] = report.converged_rows;
    manifest["failures"] = report.failures;
    manifest["summary"] = report.summary;
    bool numerical_failure = report.converged_rows < report.rows;
    for (const auto& f : report.failures)
      if (!f.value("no_transition", false)) numerical_failure = true;
    status = numerical_failure ? kExitNumerical : kExitOk;
    manifest["errors"] = Config::array();
  } catch (const ConfigError& e) {
    manifest["errors"] = {{{"kind", "config"}, {"message", e.what()}}};
    status = kExitConfig;
  } catch (const InvalidParameter& e) {
    manifest["errors"] = {{{"kind", "invalid_parameter"}, {"message", e.what()}}};
    status = kExitConfig;
  } catch (const NumericalError& e) {
    manifest["errors"] = {{{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}};
    status = kExitNumerical;
  }
  manifest["status"] = status == kExitOk ? "ok" : status == kExitConfig ? "config_error" : "not_converged";
  write_manifest(out_dir / "manifest.json", manifest);
  for (const auto& err : manifest["errors"]) std::cerr << "error: " << err["message"].get<std::string>() << '\n';
  return status;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Mean-field analysis of the quantum-annealing-correction p-spin model"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  struct Bound {
    const Command* command;
    CLI::App* sub;
    std::map<std::string, std::string> values;
    std::string config_path;
    std::string out;
  };
  std::vector<Bound> bound;
  bound.reserve(commands().size());
  for (const auto& cmd : commands()) {
    bound.push_back({&cmd, app.add_subcommand(cmd.name, cmd.help), {}, {}, {}});
    Bound& b = bound.back();
    b.sub->add_option("--config", b.config_path, "JSON config file (flags override it)");
    b.sub->add_option("--out", b.out, "output directory (default $QAC_OUTPUT_DIR or ./qac-out)");
    for (const auto& key : cmd.keys) b.sub->add_option("--" + key.name, b.values[key.name], key.help);
  }

  std::string recipe_name;
  std::string recipe_out;
  bool list_recipes = false;
  CLI::App* reproduce = app.add_subcommand("reproduce", "run a canned figure recipe");
  reproduce->add_option("recipe", recipe_name, "recipe name");
  reproduce->add_option("--out", recipe_out, "output directory (default $QAC_OUTPUT_DIR or ./qac-out)");
  reproduce->add_flag("--list", list_recipes, "list recipes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (reproduce->parsed()) {
      if (list_recipes || recipe_name.empty()) {
        for (const auto& r : recipes()) std::cout << r.name << "  " << r.help << '\n';
        return recipe_name.empty() && !list_recipes ? kExitConfig : kExitOk;
      }
      for (const auto& r : recipes())
        if (r.name == recipe_name) return run_recipe(r, resolve_output_dir(recipe_out));
      throw ConfigError("unknown recipe '" + recipe_name + "'");
    }
    for (auto& b : bound) {
      if (!b.sub->parsed()) continue;
      Config resolved = b.command->defaults;
      if (!b.config_path.empty()) resolved = merge(resolved, load_config_file(b.config_path));
      Config flags = Config::object();
      for (const auto& key : b.command->keys) {
        if (b.sub->count("--" + key.name) > 0) flags[key.name] = parse_flag_value(key, b.values[key.name]);
      }
      resolved = merge(resolved, flags);
      return execute(*b.command, resolved, resolve_output_dir(b.out));
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace qac::cli
