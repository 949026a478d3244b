#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "qac/cli/commands.hpp"
#include "qac/cli/config.hpp"
#include "qac/cli/csv.hpp"

using namespace qac::cli;
namespace fs = std::filesystem;

namespace {

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "qac");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  argv.push_back(nullptr);
  return run_cli(static_cast<int>(args.size()), argv.data());
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("qac-unit-" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string first_line(const fs::path& path) {
  const std::string text = slurp(path);
  return text.substr(0, text.find('\n'));
}

Config manifest(const fs::path& dir) { return Config::parse(slurp(dir / "manifest.json")); }

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(-2.5) == "-2.5");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_double(std::nan("")) == "nan");
  const double x = 1.0 / 3.0;
  CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("CSV table") {
  CsvTable t({"a", "b", "c"});
  t.row().add(1.5).add(std::string("x,y")).add(true);
  t.row().add(2).add(std::string("say \"hi\"")).add(false);
  CHECK(t.rows() == 2);
  CHECK(t.str() == "a,b,c\n1.5,\"x,y\",1\n2,\"say \"\"hi\"\"\",0\n");
  CHECK(t.str().find('\r') == std::string::npos);
  CsvTable short_row({"a", "b"});
  short_row.row().add(1.0);
  CHECK_THROWS(short_row.str());
  CsvTable empty({"a"});
  CHECK_THROWS(empty.add(1.0));
  CHECK(empty.str() == "a\n");
}

TEST_CASE("grid parsing") {
  const auto range = parse_grid(Config("0:1:0.25"), "g");
  REQUIRE(range.size() == 5);
  CHECK(range.back() == doctest::Approx(1.0));
  CHECK(parse_grid(Config("0.5,1,2"), "g") == std::vector<double>{0.5, 1.0, 2.0});
  CHECK(parse_grid(Config(3.0), "g") == std::vector<double>{3.0});
  CHECK(parse_grid(Config::array({1.0, 2.0}), "g") == std::vector<double>{1.0, 2.0});
  CHECK(parse_grid(Config("0.5:8:0.25"), "g").size() == 31);
  CHECK_THROWS_AS(parse_grid(Config("1,1"), "g"), ConfigError);
  CHECK_THROWS_AS(parse_grid(Config("2,1"), "g"), ConfigError);
  CHECK_THROWS_AS(parse_grid(Config("1:0:0.1"), "g"), ConfigError);
  CHECK_THROWS_AS(parse_grid(Config("0:1:0"), "g"), ConfigError);
  CHECK_THROWS_AS(parse_grid(Config("0:1"), "g"), ConfigError);
  CHECK_THROWS_AS(parse_grid(Config("a,b"), "g"), ConfigError);
  CHECK_THROWS_AS(parse_grid(Config::array({1.0, "x"}), "g"), ConfigError);
  CHECK_THROWS_AS(parse_grid(Config(true), "g"), ConfigError);

  const auto m = parse_m_grid(Config(5), -1.0);
  CHECK(m == std::vector<double>{-1.0, -0.5, 0.0, 0.5, 1.0});
  CHECK(parse_m_grid(Config("3"), 0.0) == std::vector<double>{0.0, 0.5, 1.0});
  CHECK(parse_m_grid(Config("0,0.5"), 0.0) == std::vector<double>{0.0, 0.5});
  CHECK_THROWS_AS(parse_m_grid(Config(1), 0.0), ConfigError);
  CHECK_THROWS_AS(parse_m_grid(Config("0,1.5"), 0.0), ConfigError);
}

TEST_CASE("config merging and flag values") {
  const Config base{{"p", 2}, {"gamma", 0.5}};
  const Config merged = merge(base, Config{{"gamma", 0.7}});
  CHECK(merged["gamma"] == 0.7);
  CHECK(merged["p"] == 2);
  CHECK_THROWS_AS(merge(base, Config{{"q", 1}}), ConfigError);

  const KeySpec p{"p", KeyKind::integer, ""};
  const KeySpec g{"gamma", KeyKind::real, ""};
  CHECK(parse_flag_value(p, "4") == 4);
  CHECK_THROWS_AS(parse_flag_value(p, "4.5"), ConfigError);
  CHECK(parse_flag_value(g, "0.25") == 0.25);
  CHECK_THROWS_AS(parse_flag_value(g, "0.25x"), ConfigError);
  CHECK_THROWS_AS(parse_flag_value(g, "abc"), ConfigError);
}

TEST_CASE("model parameters from a config") {
  Config c = find_command("free-energy").defaults;
  c["T"] = 0.0;
  CHECK(model_from_config(c).zero_temperature());
  c["kappa"] = "per_copy";
  CHECK(model_from_config(c).convention == qac::PenaltyFieldConvention::per_copy);
  c["kappa"] = "per_site";
  CHECK_THROWS_AS(model_from_config(c), ConfigError);
  c["kappa"] = "per_block";
  c["method"] = "closed";
  CHECK(method_from_config(c) == qac::Method::closed);
  c["method"] = "auto";
  CHECK_FALSE(method_from_config(c).has_value());
  c["method"] = "magic";
  CHECK_THROWS_AS(method_from_config(c), ConfigError);
  CHECK_THROWS_AS(find_command("no-such-command"), ConfigError);
}

TEST_CASE("output directory resolution") {
  const char* saved = std::getenv("QAC_OUTPUT_DIR");
  const std::string restore = saved != nullptr ? saved : "";
  setenv("QAC_OUTPUT_DIR", "/tmp/from-env", 1);
  CHECK(resolve_output_dir(std::nullopt) == fs::path("/tmp/from-env"));
  CHECK(resolve_output_dir(std::string("flag-dir")) == fs::path("flag-dir"));
  unsetenv("QAC_OUTPUT_DIR");
  CHECK(resolve_output_dir(std::nullopt) == fs::path("qac-out"));
  if (saved != nullptr) setenv("QAC_OUTPUT_DIR", restore.c_str(), 1);

  const fs::path dir = scratch("env");
  setenv("QAC_OUTPUT_DIR", dir.c_str(), 1);
  CHECK(run({"free-energy", "--m-grid", "5"}) == kExitOk);
  CHECK(fs::exists(dir / "free_energy.csv"));
  if (saved != nullptr) {
    setenv("QAC_OUTPUT_DIR", restore.c_str(), 1);
  } else {
    unsetenv("QAC_OUTPUT_DIR");
  }
}

TEST_CASE("free-energy output and manifest") {
  const fs::path dir = scratch("fe");
  REQUIRE(run({"free-energy", "--m-grid", "5", "--out", dir.string()}) == kExitOk);
  CHECK(slurp(dir / "free_energy.csv") ==
        "m,F,method,converged\n"
        "-1,-1.6925824035673371,closed,1\n"
        "-0.5,-1.5527756377719426,closed,1\n"
        "0,-1.1411388947880079,closed,1\n"
        "0.5,-1.5527756377719426,closed,1\n"
        "1,-1.6925824035673371,closed,1\n");
  const Config m = manifest(dir);
  CHECK(m["tool"] == "qac");
  CHECK(m["version"] == kToolVersion);
  CHECK(m["command"] == "free-energy");
  CHECK(m["status"] == "ok");
  CHECK(m["temperature"] == 0.1);
  CHECK(m["beta"].get<double>() == doctest::Approx(10.0));
  CHECK(m["rows"] == 5);
  CHECK(m["converged_rows"] == 5);
  CHECK(m["outputs"] == Config::array({"free_energy.csv"}));
  CHECK(m["config"]["p"] == 2);
  CHECK(m["errors"].empty());
}

TEST_CASE("zero temperature is recorded as infinite beta") {
  const fs::path dir = scratch("zero-t");
  REQUIRE(run({"free-energy", "--m-grid", "3", "--T", "0", "--out", dir.string()}) == kExitOk);
  const Config m = manifest(dir);
  CHECK(m["beta"] == "inf");
  CHECK(m["temperature"] == 0.0);
  CHECK(slurp(dir / "free_energy.csv").find(",zeroT,") != std::string::npos);
}

TEST_CASE("flags override the config file") {
  const fs::path dir = scratch("precedence");
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "cfg.json");
    cfg << R"({"p": 3, "gamma": 0.2, "m-grid": 3})";
  }
  REQUIRE(run({"free-energy", "--config", (dir / "cfg.json").string(), "--gamma", "0.4", "--out",
               (dir / "out").string()}) == kExitOk);
  const Config m = manifest(dir / "out");
  CHECK(m["config"]["p"] == 3);
  CHECK(m["config"]["gamma"] == 0.4);
  CHECK(m["config"]["m-grid"] == 3);
}

TEST_CASE("configuration errors exit with status 2") {
  const fs::path dir = scratch("bad");
  CHECK(run({"free-energy", "--gamma", "abc", "--out", dir.string()}) == kExitConfig);
  CHECK(run({"free-energy", "--no-such-flag", "1", "--out", dir.string()}) == kExitConfig);
  CHECK(run({"free-energy", "--p", "1", "--out", dir.string()}) == kExitConfig);
  CHECK(run({"free-energy", "--m-grid", "1,0", "--out", dir.string()}) == kExitConfig);
  CHECK(run({"no-such-command"}) == kExitConfig);
  CHECK(run({}) == kExitConfig);
  CHECK(run({"reproduce", "no-such-recipe"}) == kExitConfig);

  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "cfg.json");
    cfg << R"({"unknown_key": 1})";
  }
  CHECK(run({"free-energy", "--config", (dir / "cfg.json").string(), "--out", dir.string()}) == kExitConfig);
  {
    std::ofstream cfg(dir / "broken.json");
    cfg << "{ not json";
  }
  CHECK(run({"free-energy", "--config", (dir / "broken.json").string(), "--out", dir.string()}) == kExitConfig);
  CHECK(run({"free-energy", "--config", (dir / "missing.json").string(), "--out", dir.string()}) == kExitConfig);
}

TEST_CASE("numerical failures exit with status 3 and keep the partial output") {
  const fs::path dir = scratch("branch");
  CHECK(run({"branch-point", "--gamma", "1.5", "--out", dir.string()}) == kExitNumerical);
  const Config m = manifest(dir);
  CHECK(m["status"] == "not_converged");
  REQUIRE(m["failures"].size() == 1);
  CHECK(m["failures"][0]["sweep_value"] == 1.5);
  CHECK(first_line(dir / "branch_point.csv") == "gamma,T_branch,Gamma_branch,m_small,m_large,converged");
}

TEST_CASE("CSV headers per command") {
  struct Case {
    std::vector<std::string> args;
    std::string file;
    std::string header;
  };
  const std::vector<Case> cases{
      {{"extrema", "--grid-points", "401"}, "extrema.csv", "m,F,kind,label,converged"},
      {{"transition", "--p", "4", "--T", "0.025", "--Gamma-window", "1.7,2.0"},
       "transitions.csv",
       "sweep_value,Gamma_c,order,m_before,m_after,delta_F,delta_m,branch_label,converged"},
      {{"phase-line", "--values", "0.5", "--Gamma-window", "1,3"},
       "phase_line.csv",
       "sweep_value,Gamma_c,order,m_before,m_after,delta_F,delta_m,branch_label,converged"},
      {{"optimal-gamma", "--gamma-grid", "2,3", "--Gamma-window", "1.5,4.5"},
       "optimal_gamma.csv",
       "gamma,Gamma_c,m_large,delta_F,delta_m,converged"},
      {{"instanton", "--p-grid", "3"}, "instanton.csv", "p,beta,Gamma_c,m1,m2,overlap_coeff,area_coeff,converged"},
      {{"perturbation", "--epsilon", "0.005", "--m-grid", "0:1:0.1"},
       "perturbation.csv",
       "m,E_plus,E_minus,delta_E,validity,converged"},
      {{"oracle", "--N", "2"}, "oracle.csv", "N,C,F_per_site,meanfield_F,gap,bound,converged"},
      {{"branch-point"}, "branch_point.csv", "gamma,T_branch,Gamma_branch,m_small,m_large,converged"},
  };
  for (const auto& c : cases) {
    CAPTURE(c.file);
    const fs::path dir = scratch("header");
    auto args = c.args;
    args.push_back("--out");
    args.push_back(dir.string());
    CHECK(run(args) == kExitOk);
    CHECK(first_line(dir / c.file) == c.header);
    CHECK(manifest(dir)["outputs"].size() >= 1);
  }
}

TEST_CASE("repeated runs are byte-identical") {
  const fs::path a = scratch("det-a");
  const fs::path b = scratch("det-b");
  const std::vector<std::string> args{"transition", "--p", "4", "--T", "0.025", "--Gamma-window", "1.7,2.0"};
  auto with_a = args;
  with_a.insert(with_a.end(), {"--out", a.string(), "--workers", "1"});
  auto with_b = args;
  with_b.insert(with_b.end(), {"--out", b.string(), "--workers", "4"});
  REQUIRE(run(with_a) == kExitOk);
  REQUIRE(run(with_b) == kExitOk);
  CHECK(slurp(a / "transitions.csv") == slurp(b / "transitions.csv"));
  CHECK(!slurp(a / "transitions.csv").empty());
}
