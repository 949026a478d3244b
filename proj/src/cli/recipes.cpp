#include <algorithm>
#include <iostream>

#include "qac/cli/commands.hpp"
#include "qac/cli/csv.hpp"

namespace qac::cli {

namespace {

RecipeStep curve(const std::string& subdir, double gamma, double T, double Gamma, double epsilon = 0.0) {
  return {subdir, "free-energy",
          Config{{"p", 4}, {"C", 3}, {"gamma", gamma}, {"T", T}, {"Gamma", Gamma}, {"epsilon", epsilon},
                 {"m-grid", "0:1:0.0025"}}};
}

std::string tag(double value) {
  std::string s = format_double(value);
  std::replace(s.begin(), s.end(), '.', 'p');
  return s;
}

}  // namespace

const std::vector<Recipe>& recipes() {
  static const std::vector<Recipe> list = [] {
    std::vector<Recipe> r;

    Recipe p2{"fig-phase-p2", "(Gamma, gamma) second-order lines for p = 2, C = 3 at several T", {}};
    for (double T : {0.1, 0.5, 1.0, 1.5, 2.0, 2.22}) {
      p2.steps.push_back({"T" + tag(T), "phase-line",
                          Config{{"p", 2}, {"C", 3}, {"T", T}, {"sweep", "gamma"}, {"values", "0.01:2:0.01"},
                                 {"Gamma-window", "0.000001,5"}}});
    }
    r.push_back(p2);

    Recipe p4{"fig-phase-p4", "(Gamma, T) first-order lines for p = 4, C = 3 with branch structure", {}};
    for (double g : {0.5, 0.7, 1.5}) {
      p4.steps.push_back({"gamma" + tag(g), "phase-line",
                          Config{{"p", 4}, {"C", 3}, {"gamma", g}, {"sweep", "T"}, {"values", "0.005:0.3:0.005"},
                                 {"Gamma-window", "0.5,4"}}});
    }
    r.push_back(p4);

    r.push_back({"fig-branch-g07",
                 "branch point and the triply degenerate free energy for gamma = 0.7",
                 {{"branch-point", "branch-point", Config{{"gamma", 0.7}}}, curve("curve", 0.7, 0.078, 2.096)}});

    Recipe appc{"fig-appc-panels", "free-energy curves along the p = 4 transition lines", {}};
    for (double G : {1.8, 1.846, 1.91, 2.0}) appc.steps.push_back(curve("g0p5_G" + tag(G), 0.5, 0.025, G));
    for (double G : {2.1, 2.22, 2.6, 2.95}) appc.steps.push_back(curve("g0p8_G" + tag(G), 0.8, 0.025, G));
    for (double G : {2.0, 2.04, 2.08, 2.12}) appc.steps.push_back(curve("T0p1_g0p7_G" + tag(G), 0.7, 0.1, G));
    appc.steps.push_back(curve("g0_G1p846", 0.0, 0.025, 1.846));
    r.push_back(appc);

    r.push_back({"fig-compf",
                 "free energies at the critical points with and without the penalty transverse field",
                 {curve("eps0", 0.5, 0.03, 1.85), curve("eps0p1", 0.5, 0.03, 1.76, 0.1)}});

    r.push_back({"fig-optimal-gamma",
                 "critical field, m_large and barrier height against gamma (p = 4, T = 0.025, epsilon = 1)",
                 {{"scan", "optimal-gamma", Config::object()}}});

    r.push_back({"fig-instanton",
                 "sharp-instanton versus barrier-area coefficients at beta = 20 and 30",
                 {{"beta20", "instanton", Config{{"beta", 20.0}}}, {"beta30", "instanton", Config{{"beta", 30.0}}}}});

    r.push_back({"fig-perturbation",
                 "second-order correction profile in m",
                 {{"profile", "perturbation", Config::object()}}});
    return r;
  }();
  return list;
}

int run_recipe(const Recipe& recipe, const std::filesystem::path& out_dir) {
  int worst = kExitOk;
  for (const auto& step : recipe.steps) {
    const Command& command = find_command(step.command);
    const Config resolved = merge(command.defaults, step.overrides);
    const auto dir = out_dir / recipe.name / step.subdir;
    std::cout << recipe.name << '/' << step.subdir << ": " << step.command << std::flush;
    const int status = execute(command, resolved, dir);
    std::cout << (status == kExitOk ? " ok" : " status " + std::to_string(status)) << '\n';
    worst = std::max(worst, status);
  }
  return worst;
}

}  // namespace qac::cli
