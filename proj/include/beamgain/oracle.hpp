#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "beamgain/types.hpp"

namespace beamgain::oracle {

/// Outcome of one engine-vs-oracle comparison. gap = engine - oracle (signed).
struct OracleReport {
  std::string suite;
  std::size_t case_index = 0;
  double oracle_cost = 0.0;
  double engine_cost = 0.0;
  double gap = 0.0;
  std::string samples_or_gridstep;
  std::string inputs_json;  ///< enough to replay the case
  bool passed = true;
};

/// One JSON object per line.
std::string to_json_line(const OracleReport& report);

struct GridResult {
  double g0 = 0.0;
  double cost = 0.0;
  double g0_max = 0.0;  ///< after any widening
  bool widened = false;
};

/// Scans g0 over (0, g0_max] at `step`, evaluating the auxiliary-block cost
/// with g, h at their optimal clamps, then refines the best grid point by
/// ternary search. If g0_max is below the largest breakpoint plus rho1/L_ML
/// (beyond which the cost increases) it is widened there and `widened` set.
GridResult oracle_g0_grid(const CVector& z1, const CVector& z2, double rho1, double rho2,
                          double gamma, double g0_max, double step);
inline GridResult oracle_g0_grid(const CVector& y, double rho, double g0_max, double step) {
  return oracle_g0_grid(y, CVector(), rho, 1.0, 1.0, g0_max, step);
}

struct SphereResult {
  RVector x;
  double cost = 0.0;
};

/// Best of `restarts` random unit starts, each polished by normalized
/// gradient descent on ||M^T x - d||^2 until the step falls below 1e-10.
SphereResult oracle_sphere(const RMatrix& M, const RVector& d, int restarts, std::uint64_t seed);

/// All real roots of sum (beta/(nu - lambda))^2 = 1 found by a sign-change
/// scan at `step` (0 picks 1e-5 of the range) over
/// [min lambda - sqrt(M) max|beta| - 1, max lambda + sqrt(M) max|beta| + 1],
/// each refined by bisection. Ascending.
std::vector<double> oracle_secular_scan(const RVector& lambdas, const RVector& beta,
                                        double step = 0.0);

/// Summary of a randomized engine-vs-oracle suite.
struct SuiteSummary {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  double worst_gap = 0.0;  ///< largest engine - oracle (or largest violation)
  std::vector<OracleReport> reports;

  bool passed() const { return failures == 0; }
};

/// update_g_wosc and update_gh_wsc against the 1-D grid oracle (L <= 12),
/// `cases` instances of each. Pass: engine cost <= oracle cost + tol.
SuiteSummary subproblem_suite(std::size_t cases, std::uint64_t seed, double tol = 1e-6);

/// solve_sphere_lsq against the multi-restart oracle (2N <= 12).
SuiteSummary sphere_suite(std::size_t cases, std::uint64_t seed, int restarts = 64,
                          double tol = 1e-6);

/// secular_bisect: |f1| <= 1e-10, root inside the bracket, and its cost no
/// larger than at any other scanned root.
SuiteSummary secular_suite(std::size_t cases, std::uint64_t seed);

}  // namespace beamgain::oracle
