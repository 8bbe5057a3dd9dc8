#include "beamgain/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "beamgain/array_geometry.hpp"
#include "beamgain/csv.hpp"
#include "beamgain/errors.hpp"
#include "beamgain/exports.hpp"
#include "beamgain/oracle.hpp"
#include "beamgain/run_config.hpp"
#include "beamgain/synthesis.hpp"

namespace beamgain {

namespace {

namespace fs = std::filesystem;

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const IngestionError*>(&e) ||
      dynamic_cast<const DomainError*>(&e)) {
    return kExitConfig;
  }
  return kExitNumerical;
}

// Applies --algorithm on top of the config's dSLL.
void apply_algorithm(RunConfig& cfg, const std::string& algorithm) {
  if (algorithm == "wosc") {
    cfg.dsll_db.reset();
  } else if (algorithm == "wsc") {
    if (!cfg.dsll_db) throw ConfigError("--algorithm wsc needs problem.dsll_db in the config");
  }
}

std::string algorithm_name(const RunConfig& cfg) { return cfg.dsll_db ? "wsc" : "wosc"; }

std::string join(const std::string& dir, const char* name) {
  return (fs::path(dir) / name).string();
}

void prepare_directory(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory '" + dir + "': " + ec.message());
}

int run_synth(const std::string& config_path, const std::string& algorithm,
              std::optional<std::uint64_t> seed) {
  RunConfig cfg = load_run_config(config_path);
  apply_algorithm(cfg, algorithm);
  if (seed) cfg.seed = *seed;
  const SynthesisProblem problem = build_problem(cfg);
  const SynthesisResult result = synthesize(problem);

  prepare_directory(cfg.output.directory);
  const std::string algo = algorithm_name(cfg);
  if (cfg.output.pattern) export_pattern(result, join(cfg.output.directory, "pattern.csv"));
  if (cfg.output.weights) export_weights(result, join(cfg.output.directory, "weights.csv"));
  if (cfg.output.history) export_history(result, join(cfg.output.directory, "history.csv"));
  if (cfg.output.summary) {
    export_summary(result, cfg, algo, join(cfg.output.directory, "summary.json"));
  }
  std::fprintf(stderr, "%s: G0 %.4f dBi, oSLL %.3f dB, ripple %.3f dB, %d iterations%s\n",
               algo.c_str(), result.g0_dbi, result.osll_db, result.ripple_db, result.iterations,
               result.converged ? "" : " (not converged)");
  return result.converged ? kExitOk : kExitNotConverged;
}

int run_sweep(const std::string& config_path, const std::string& algorithm,
              const std::string& centers_spec, std::optional<std::uint64_t> seed) {
  RunConfig cfg = load_run_config(config_path);
  apply_algorithm(cfg, algorithm);
  if (seed) cfg.seed = *seed;
  const std::vector<double> centers = parse_centers(centers_spec);
  const SynthesisProblem problem = build_problem(cfg);
  // every center must be valid before anything runs
  for (double c : centers) {
    assemble_regions(c, problem.beamwidth_deg, problem.guard_deg, problem.resolution_deg);
  }
  const std::vector<SweepRow> rows = scan_sweep(problem, centers);
  prepare_directory(cfg.output.directory);
  write_file_atomic(join(cfg.output.directory, "sweep.csv"), sweep_csv(rows));

  int code = kExitOk;
  for (const SweepRow& row : rows) {
    if (!row.error.empty()) {
      std::fprintf(stderr, "center %g: %s\n", row.center_deg, row.error.c_str());
      code = kExitNumerical;
    } else if (!row.result->converged && code == kExitOk) {
      code = kExitNotConverged;
    }
  }
  std::fprintf(stderr, "sweep: %zu centers written to %s\n", rows.size(),
               join(cfg.output.directory, "sweep.csv").c_str());
  return code;
}

int run_validate(std::uint64_t seed, std::size_t subproblem_cases, std::size_t sphere_cases,
                 std::size_t secular_cases, const std::string& report_path) {
  std::vector<oracle::SuiteSummary> suites;
  suites.push_back(oracle::subproblem_suite(subproblem_cases, seed));
  suites.push_back(oracle::sphere_suite(sphere_cases, seed + 1));
  suites.push_back(oracle::secular_suite(secular_cases, seed + 2));
  std::string lines;
  bool ok = true;
  for (const auto& s : suites) {
    std::printf("%-10s cases %zu failures %zu worst gap %.3e %s\n", s.name.c_str(), s.cases,
                s.failures, s.worst_gap, s.passed() ? "PASS" : "FAIL");
    for (const auto& r : s.reports) lines += oracle::to_json_line(r) + "\n";
    ok = ok && s.passed();
  }
  if (!report_path.empty()) write_file_atomic(report_path, lines);
  return ok ? kExitOk : kExitNumerical;
}

int run_fixtures(const std::string& dir) {
  prepare_directory(dir);
  write_file_atomic(join(dir, "ula41.csv"), geometry_csv(ula41()));
  write_file_atomic(join(dir, "nonuniform41.csv"), geometry_csv(nonuniform41()));
  std::fprintf(stderr, "wrote ula41.csv and nonuniform41.csv to %s\n", dir.c_str());
  return kExitOk;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Power-gain array pattern synthesis"};
  app.require_subcommand(1);

  std::string config_path, algorithm, centers_spec, out_dir = ".", report_path;
  std::uint64_t seed_value = 0;
  std::size_t sub_cases = 10000, sphere_cases = 1000, secular_cases = 1000;

  auto* synth = app.add_subcommand("synth", "Synthesize one beam");
  synth->add_option("--config", config_path, "JSON run config")->required();
  synth->add_option("--algorithm", algorithm, "wosc or wsc (default: from dsll_db)")
      ->check(CLI::IsMember({"wosc", "wsc"}));
  auto* synth_seed = synth->add_option("--seed", seed_value, "Recorded in summary.json");

  auto* sweep = app.add_subcommand("sweep", "Scan the beam center");
  sweep->add_option("--config", config_path, "JSON run config")->required();
  sweep->add_option("--centers", centers_spec, "a:b:step in degrees")->required();
  sweep->add_option("--algorithm", algorithm, "wosc or wsc")->check(CLI::IsMember({"wosc", "wsc"}));
  auto* sweep_seed = sweep->add_option("--seed", seed_value, "Recorded only");

  auto* validate = app.add_subcommand("validate", "Run the oracle suites");
  validate->add_option("--seed", seed_value, "Sampling seed");
  validate->add_option("--subproblem-cases", sub_cases, "Cases per subproblem solver");
  validate->add_option("--sphere-cases", sphere_cases, "Sphere least-squares cases");
  validate->add_option("--secular-cases", secular_cases, "Secular equation cases");
  validate->add_option("--report", report_path, "JSON lines of failing cases");

  auto* fixtures = app.add_subcommand("fixtures", "Write the bundled array geometries");
  fixtures->add_option("--out", out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, std::cerr, std::cerr);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*synth) {
      return run_synth(config_path, algorithm,
                       *synth_seed ? std::optional<std::uint64_t>(seed_value) : std::nullopt);
    }
    if (*sweep) {
      return run_sweep(config_path, algorithm, centers_spec,
                       *sweep_seed ? std::optional<std::uint64_t>(seed_value) : std::nullopt);
    }
    if (*validate) return run_validate(seed_value, sub_cases, sphere_cases, secular_cases, report_path);
    if (*fixtures) return run_fixtures(out_dir);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e);
  }
  return kExitUsage;
}

}  // namespace beamgain
