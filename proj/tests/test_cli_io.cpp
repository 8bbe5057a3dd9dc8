#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include <json.hpp>

#include "beamgain/cli.hpp"
#include "beamgain/csv.hpp"
#include "beamgain/errors.hpp"
#include "beamgain/exports.hpp"
#include "beamgain/run_config.hpp"

using namespace beamgain;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("beamgain-test-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "beamgain");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

SynthesisResult flat_result(double resolution) {
  SynthesisResult r;
  const AngularGrid g = AngularGrid::visible(resolution);
  r.pattern_angles_deg.assign(g.angles().begin(), g.angles().end());
  r.pattern_dbi = RVector::Zero(static_cast<Eigen::Index>(g.size()));
  r.weights_effective = CVector::Ones(2);
  r.weights_physical = CVector::Ones(2);
  return r;
}

}  // namespace

TEST_CASE("config parsing fills defaults") {
  const RunConfig c = parse_run_config(R"({"geometry": {"fixture": "ula41"}})");
  CHECK(c.geometry.fixture == "ula41");
  CHECK(c.beamwidth_deg == 20.0);
  CHECK(c.resolution_deg == 0.5);
  CHECK(c.guard_deg == 3.0);
  CHECK_FALSE(c.dsll_db.has_value());
  CHECK(c.admm.rho_init == 1000.0);
  CHECK(c.admm.iter_max == 2000);
  CHECK(c.output.directory == ".");

  const RunConfig d = parse_run_config(
      R"({"geometry": {"file": "arr.csv"}, "problem": {"dsll_db": -25},
          "admm": {"rho_init": 2000}, "seed": 9})",
      "/data");
  CHECK(d.geometry.file == "/data/arr.csv");
  CHECK(*d.dsll_db == -25.0);
  CHECK(d.admm.rho2_init == 2000.0);
  CHECK(d.seed == 9);
}

TEST_CASE("config schema violations") {
  CHECK_THROWS_AS(parse_run_config("{"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("{}"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"geometry": {"fixture": "ula41"}, "extra": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"geometry": {"fixture": "ula41"}, "problem": {"bw": 1}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"geometry": {"fixture": "ula7"}})"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"geometry": {"fixture": "ula41", "file": "x"}})"), ConfigError);
  CHECK_THROWS_AS(
      parse_run_config(R"({"geometry": {"fixture": "ula41"}, "problem": {"beamwidth_deg": "wide"}})"),
      ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"geometry": {"fixture": "ula41"}, "admm": {"iter_max": 1.5}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"geometry": {"fixture": "ula41"}, "admm": {"rho_init": 0.5}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"geometry": {"fixture": "ula41"}, "problem": {"dsll_db": 3}})"),
                  ConfigError);
  CHECK_THROWS_AS(load_run_config("/nonexistent/beamgain.json"), ConfigError);
}

TEST_CASE("resolved config round trips") {
  const RunConfig c = parse_run_config(
      R"({"geometry": {"fixture": "nonuniform41"}, "aep": {"synthetic_half_width_deg": 45},
          "problem": {"dsll_db": -20, "beamwidth_deg": 20}})");
  const RunConfig again = parse_run_config(run_config_json(c));
  CHECK(run_config_json(again) == run_config_json(c));
  const auto j = nlohmann::json::parse(run_config_json(c));
  CHECK(j["admm"]["rho_decay"] == 0.99);
  CHECK(j["problem"]["guard_deg"] == 3.0);
  CHECK(j["aep"]["synthetic_half_width_deg"] == 45.0);
  const SynthesisProblem p = build_problem(c);
  CHECK(p.geometry->has_element_patterns());
  CHECK(p.geometry->size() == 41);
}

TEST_CASE("pattern export format") {
  const std::string coarse = pattern_csv(flat_result(90.0));
  CHECK(coarse == "theta_deg,gain_dbi\n-90.000000,0.000000\n0.000000,0.000000\n90.000000,0.000000\n");
  const std::string fine = pattern_csv(flat_result(0.5));
  CHECK(std::count(fine.begin(), fine.end(), '\n') == 362);

  TempDir tmp;
  export_pattern(flat_result(0.5), tmp.file("pattern.csv"));
  CHECK(read_text_file(tmp.file("pattern.csv")) == fine);
  CHECK_FALSE(fs::exists(tmp.file("pattern.csv.tmp")));
  CHECK_THROWS_AS(export_pattern(flat_result(0.5), tmp.file("missing/dir/pattern.csv")), Error);
}

TEST_CASE("weights export") {
  SynthesisResult r = flat_result(90.0);
  r.weights_effective(1) = cdouble(0.25, -1.5);
  r.weights_physical(1) = cdouble(0.5, -3.0);
  const std::string csv = weights_csv(r);
  CHECK(csv == "element,re_effective,im_effective,re_physical,im_physical\n0,1,0,1,0\n1,0.25,-1.5,0.5,-3\n");
}

TEST_CASE("cli: missing config exits 2 and writes nothing") {
  TempDir tmp;
  const fs::path previous = fs::current_path();
  fs::current_path(tmp.path);
  CHECK(run_cli({"synth", "--config", tmp.file("absent.json")}) == kExitConfig);
  fs::current_path(previous);
  CHECK(fs::is_empty(tmp.path));
}

TEST_CASE("cli: unknown key exits 2") {
  TempDir tmp;
  write(tmp.file("c.json"), R"({"geometry": {"fixture": "ula41"}, "typo": 1})");
  CHECK(run_cli({"synth", "--config", tmp.file("c.json")}) == kExitConfig);
}

TEST_CASE("cli: fixtures") {
  TempDir tmp;
  CHECK(run_cli({"fixtures", "--out", tmp.path.string()}) == kExitOk);
  const ArrayGeometry u = load_geometry(tmp.file("ula41.csv"));
  CHECK(u.positions() == ula41().positions());
  const ArrayGeometry nu = load_geometry(tmp.file("nonuniform41.csv"));
  CHECK(nu.positions() == nonuniform41().positions());
}

TEST_CASE("cli: synth on the ULA fixture is deterministic") {
  TempDir tmp;
  write(tmp.file("c.json"),
        R"({"geometry": {"fixture": "ula41"}, "problem": {"beamwidth_deg": 10},
            "output": {"directory": "run"}})");
  CHECK(run_cli({"synth", "--config", tmp.file("c.json"), "--algorithm", "wosc", "--seed", "4"}) ==
        kExitOk);
  for (const char* f : {"pattern.csv", "weights.csv", "history.csv", "summary.json"}) {
    CHECK(fs::exists(tmp.path / "run" / f));
  }
  const auto summary = nlohmann::json::parse(read_text_file(tmp.file("run/summary.json")));
  CHECK(summary["g0_dbi"].get<double>() == doctest::Approx(9.59).epsilon(0.15 / 9.59));
  CHECK(summary["config"]["seed"] == 4);
  CHECK(summary["algorithm"] == "wosc");
  const std::string first_pattern = read_text_file(tmp.file("run/pattern.csv"));
  const std::string first_summary = read_text_file(tmp.file("run/summary.json"));
  CHECK(std::count(first_pattern.begin(), first_pattern.end(), '\n') == 362);

  CHECK(run_cli({"synth", "--config", tmp.file("c.json"), "--algorithm", "wosc", "--seed", "4"}) ==
        kExitOk);
  CHECK(read_text_file(tmp.file("run/pattern.csv")) == first_pattern);
  CHECK(read_text_file(tmp.file("run/summary.json")) == first_summary);
}

TEST_CASE("cli: wsc without a sidelobe level is a config error") {
  TempDir tmp;
  write(tmp.file("c.json"), R"({"geometry": {"fixture": "ula41"}})");
  CHECK(run_cli({"synth", "--config", tmp.file("c.json"), "--algorithm", "wsc"}) == kExitConfig);
}

TEST_CASE("cli: non-convergence exits 4 and still writes artifacts") {
  TempDir tmp;
  write(tmp.file("c.json"),
        R"({"geometry": {"fixture": "ula41"}, "admm": {"iter_max": 5},
            "output": {"directory": "run"}})");
  CHECK(run_cli({"synth", "--config", tmp.file("c.json")}) == kExitNotConverged);
  CHECK(fs::exists(tmp.path / "run" / "summary.json"));
  const auto summary = nlohmann::json::parse(read_text_file(tmp.file("run/summary.json")));
  CHECK(summary["converged"] == false);
  CHECK(summary["iterations"] == 5);
}

TEST_CASE("cli: sweep writes one row per center") {
  TempDir tmp;
  write(tmp.file("arr.csv"), "position_lambda,efficiency\n-1,1\n-0.5,1\n0,1\n0.5,1\n1,1\n");
  write(tmp.file("c.json"),
        R"({"geometry": {"file": "arr.csv"}, "problem": {"beamwidth_deg": 20, "dsll_db": -10},
            "admm": {"rho_init": 2000}, "output": {"directory": "sweep"}})");
  const int code = run_cli({"sweep", "--config", tmp.file("c.json"), "--centers", "0:20:10"});
  CHECK((code == kExitOk || code == kExitNotConverged));
  const std::string csv = read_text_file(tmp.file("sweep/sweep.csv"));
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  CHECK(run_cli({"sweep", "--config", tmp.file("c.json"), "--centers", "0:90:45"}) == kExitConfig);
}

TEST_CASE("cli: validate and usage") {
  TempDir tmp;
  CHECK(run_cli({"validate", "--seed", "3", "--subproblem-cases", "50", "--sphere-cases", "10",
                 "--secular-cases", "20", "--report", tmp.file("report.jsonl")}) == kExitOk);
  CHECK(fs::exists(tmp.file("report.jsonl")));
  CHECK(run_cli({"bogus"}) == kExitUsage);
  CHECK(run_cli({}) == kExitUsage);
}
