#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "beamgain/admm.hpp"
#include "beamgain/angular_grid.hpp"
#include "beamgain/array_geometry.hpp"
#include "beamgain/types.hpp"

namespace beamgain {

/// One wide-beam synthesis task. An absent dsll_db selects the
/// unconstrained (WoSC) algorithm.
struct SynthesisProblem {
  std::shared_ptr<const ArrayGeometry> geometry;
  double beam_center_deg = 0.0;
  double beamwidth_deg = 20.0;
  double resolution_deg = 0.5;
  double guard_deg = 3.0;
  std::optional<double> dsll_db;
  AdmmConfig admm;

  void validate() const;
};

/// Closed angular interval in degrees.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double deg, double eps = 1e-9) const { return deg >= lo - eps && deg <= hi + eps; }
};

struct Regions {
  AngularGrid mainlobe;
  std::vector<double> sidelobe;  ///< left side then right side, ascending
  Interval mainlobe_interval;
  std::vector<Interval> sidelobe_intervals;  ///< only non-empty sides
};

/// Mainlobe [c - bw/2, c + bw/2] and sidelobe [-90, c - bw/2 - guard] U
/// [c + bw/2 + guard, 90], all sampled at `resolution` with endpoints.
/// Throws DomainError when the mainlobe leaves [-90, 90].
Regions assemble_regions(double center_deg, double beamwidth_deg, double guard_deg,
                         double resolution_deg);

struct PatternMetrics {
  double g0_dbi = 0.0;     ///< minimum over the mainlobe
  double osll_db = 0.0;    ///< max over sidelobes minus mainlobe minimum
  double ripple_db = 0.0;  ///< max minus min over the mainlobe
};

/// Region membership is by interval. Throws DomainError when either region
/// has no pattern sample (a WoSC problem with no sidelobe samples reports
/// osll as -inf instead when `allow_empty_sidelobe`).
PatternMetrics compute_metrics(std::span<const double> angles_deg, const RVector& gain_dbi,
                               const Regions& regions, bool allow_empty_sidelobe = false);

struct SynthesisResult {
  CVector weights_effective;
  CVector weights_physical;
  double g0_dbi = 0.0;        ///< pattern minimum over the mainlobe
  double g0_state_dbi = 0.0;  ///< 10 log10(2 g0^2) from the solver state
  std::vector<double> pattern_angles_deg;
  RVector pattern_dbi;
  double osll_db = 0.0;
  double ripple_db = 0.0;
  int iterations = 0;
  bool converged = false;
  double residual_ml = 0.0;
  double residual_sl = 0.0;
  std::vector<IterationRecord> history;
  double wall_ms = 0.0;
};

SynthesisResult synthesize(const SynthesisProblem& problem);

struct SweepRow {
  double center_deg = 0.0;
  std::optional<SynthesisResult> result;
  std::string error;  ///< set when the run threw
  double wall_ms = 0.0;
};

/// Independent cold-start runs, one per center, in up to `threads` workers
/// (0 reads BEAMGAIN_THREADS, else hardware concurrency). Rows come back in
/// center order; a failing center is recorded and the sweep continues.
std::vector<SweepRow> scan_sweep(const SynthesisProblem& templ, const std::vector<double>& centers,
                                 unsigned threads = 0);

/// `theta_c_deg,g0_dbi,osll_db,ripple_db,iterations,converged,wall_ms`.
std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Parses `a:b:step` into a ascending center list (b included).
std::vector<double> parse_centers(const std::string& spec);

}  // namespace beamgain
