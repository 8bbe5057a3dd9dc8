#include "beamgain/synthesis.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>

#include "beamgain/errors.hpp"
#include "beamgain/gain_operators.hpp"

namespace beamgain {

namespace {

constexpr double kEdgeEps = 1e-9;

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since)
      .count();
}

unsigned thread_budget(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("BEAMGAIN_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

void SynthesisProblem::validate() const {
  if (!geometry) throw ConfigError("synthesis problem has no geometry");
  if (!std::isfinite(beam_center_deg) || !std::isfinite(beamwidth_deg)) {
    throw DomainError("beam center and width must be finite");
  }
  if (!(beamwidth_deg >= 0.0)) throw DomainError("beamwidth must be non-negative");
  if (!(resolution_deg > 0.0) || !std::isfinite(resolution_deg)) {
    throw DomainError("angular resolution must be positive");
  }
  if (!(guard_deg >= 0.0) || !std::isfinite(guard_deg)) {
    throw DomainError("guard band must be non-negative");
  }
  if (dsll_db && !(std::isfinite(*dsll_db) && *dsll_db < 0.0)) {
    throw DomainError("desired sidelobe level must be a negative dB value");
  }
  admm.validate(dsll_db.has_value());
}

Regions assemble_regions(double center_deg, double beamwidth_deg, double guard_deg,
                         double resolution_deg) {
  if (!(guard_deg >= 0.0)) throw DomainError("guard band must be non-negative");
  const double lo = center_deg - beamwidth_deg / 2.0;
  const double hi = center_deg + beamwidth_deg / 2.0;
  if (lo < -90.0 - kEdgeEps || hi > 90.0 + kEdgeEps) {
    throw DomainError("mainlobe [" + std::to_string(lo) + ", " + std::to_string(hi) +
                      "] deg is clipped by the visible region");
  }
  Regions r;
  r.mainlobe = AngularGrid::span(lo, hi, resolution_deg);
  if (r.mainlobe.empty()) throw DomainError("mainlobe has no samples");
  r.mainlobe_interval = {lo, hi};

  const double left_end = lo - guard_deg;
  const double right_start = hi + guard_deg;
  if (left_end >= -90.0 - kEdgeEps) {
    const AngularGrid left = AngularGrid::span(-90.0, left_end, resolution_deg);
    r.sidelobe.insert(r.sidelobe.end(), left.angles().begin(), left.angles().end());
    r.sidelobe_intervals.push_back({-90.0, left_end});
  }
  if (right_start <= 90.0 + kEdgeEps) {
    const AngularGrid right = AngularGrid::span(right_start, 90.0, resolution_deg);
    r.sidelobe.insert(r.sidelobe.end(), right.angles().begin(), right.angles().end());
    r.sidelobe_intervals.push_back({right_start, 90.0});
  }
  return r;
}

PatternMetrics compute_metrics(std::span<const double> angles_deg, const RVector& gain_dbi,
                               const Regions& regions, bool allow_empty_sidelobe) {
  if (static_cast<Eigen::Index>(angles_deg.size()) != gain_dbi.size()) {
    throw DimensionError("pattern angles and gains differ in length");
  }
  double ml_min = std::numeric_limits<double>::infinity();
  double ml_max = -std::numeric_limits<double>::infinity();
  double sl_max = -std::numeric_limits<double>::infinity();
  std::size_t ml_count = 0, sl_count = 0;
  for (std::size_t i = 0; i < angles_deg.size(); ++i) {
    const double a = angles_deg[i];
    const double g = gain_dbi(static_cast<Eigen::Index>(i));
    if (regions.mainlobe_interval.contains(a)) {
      ml_min = std::min(ml_min, g);
      ml_max = std::max(ml_max, g);
      ++ml_count;
    }
    for (const Interval& iv : regions.sidelobe_intervals) {
      if (iv.contains(a)) {
        sl_max = std::max(sl_max, g);
        ++sl_count;
        break;
      }
    }
  }
  if (ml_count == 0) throw DomainError("pattern has no samples in the mainlobe");
  if (sl_count == 0 && !allow_empty_sidelobe) {
    throw DomainError("pattern has no samples in the sidelobe region");
  }
  PatternMetrics m;
  m.g0_dbi = ml_min;
  m.ripple_db = ml_max - ml_min;
  m.osll_db = sl_count == 0 ? -std::numeric_limits<double>::infinity() : sl_max - ml_min;
  return m;
}

SynthesisResult synthesize(const SynthesisProblem& problem) {
  problem.validate();
  const auto start = std::chrono::steady_clock::now();
  const ArrayGeometry& geo = *problem.geometry;
  const Regions regions = assemble_regions(problem.beam_center_deg, problem.beamwidth_deg,
                                           problem.guard_deg, problem.resolution_deg);
  const bool wsc = problem.dsll_db.has_value();
  const GainOperators ops = build_gain_operators(
      geo, regions.mainlobe.angles(),
      wsc ? std::span<const double>(regions.sidelobe) : std::span<const double>());

  AdmmConfig cfg = problem.admm;
  if (wsc) cfg.gamma = gamma_from_dsll(*problem.dsll_db);
  AdmmState state = wsc ? run_wsc(ops, cfg) : run_wosc(ops, cfg);

  SynthesisResult out;
  out.weights_effective = ops.C_inv * state.x;
  out.weights_physical = out.weights_effective;
  for (std::size_t n = 0; n < geo.size(); ++n) {
    out.weights_physical(static_cast<Eigen::Index>(n)) /= std::sqrt(geo.efficiencies()[n]);
  }
  const AngularGrid full = AngularGrid::visible(problem.resolution_deg);
  out.pattern_angles_deg.assign(full.angles().begin(), full.angles().end());
  out.pattern_dbi = power_gain_pattern(geo, ops.A, out.weights_effective, full.angles());
  const PatternMetrics m = compute_metrics(out.pattern_angles_deg, out.pattern_dbi, regions, true);
  out.g0_dbi = m.g0_dbi;
  out.osll_db = m.osll_db;
  out.ripple_db = m.ripple_db;
  out.g0_state_dbi = to_db(2.0 * state.g0 * state.g0);
  out.iterations = state.iteration;
  out.converged = state.converged;
  out.residual_ml = state.residual_ml;
  out.residual_sl = state.residual_sl;
  out.history = std::move(state.history);
  out.wall_ms = elapsed_ms(start);
  return out;
}

std::vector<SweepRow> scan_sweep(const SynthesisProblem& templ, const std::vector<double>& centers,
                                 unsigned threads) {
  std::vector<SweepRow> rows(centers.size());
  for (std::size_t i = 0; i < centers.size(); ++i) rows[i].center_deg = centers[i];
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      const auto start = std::chrono::steady_clock::now();
      SynthesisProblem p = templ;
      p.beam_center_deg = rows[i].center_deg;
      try {
        rows[i].result = synthesize(p);
      } catch (const std::exception& e) {
        rows[i].error = e.what();
      }
      rows[i].wall_ms = elapsed_ms(start);
    }
  };
  const unsigned n = std::min<std::size_t>(thread_budget(threads), std::max<std::size_t>(1, rows.size()));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "theta_c_deg,g0_dbi,osll_db,ripple_db,iterations,converged,wall_ms\n";
  char buf[256];
  for (const SweepRow& row : rows) {
    if (row.result) {
      const SynthesisResult& r = *row.result;
      std::snprintf(buf, sizeof buf, "%.12g,%.6f,%.6f,%.6f,%d,%d,%.3f\n", row.center_deg, r.g0_dbi,
                    r.osll_db, r.ripple_db, r.iterations, r.converged ? 1 : 0, row.wall_ms);
    } else {
      std::snprintf(buf, sizeof buf, "%.12g,nan,nan,nan,0,0,%.3f\n", row.center_deg, row.wall_ms);
    }
    out += buf;
  }
  return out;
}

std::vector<double> parse_centers(const std::string& spec) {
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end != item.c_str() + item.size() || !std::isfinite(v)) {
      throw ConfigError("bad center list '" + spec + "', expected a:b:step");
    }
    parts.push_back(v);
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3) throw ConfigError("bad center list '" + spec + "', expected a:b:step");
  const double a = parts[0], b = parts[1], step = parts[2];
  if (!(step > 0.0) || b < a) throw ConfigError("center list needs step > 0 and b >= a");
  std::vector<double> centers;
  const auto count = static_cast<long>(std::floor((b - a) / step + 1e-9));
  for (long k = 0; k <= count; ++k) centers.push_back(a + static_cast<double>(k) * step);
  return centers;
}

}  // namespace beamgain
