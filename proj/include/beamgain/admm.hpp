#pragma once

#include <limits>
#include <string>
#include <vector>

#include "beamgain/gain_operators.hpp"
#include "beamgain/subproblems.hpp"
#include "beamgain/types.hpp"

namespace beamgain {

/// Penalty schedule, stopping rule and sidelobe ratio for one ADMM run.
struct AdmmConfig {
  double rho_init = 1000.0;   ///< mainlobe penalty, in (1, 10000)
  double rho2_init = 1000.0;  ///< sidelobe penalty, in (1, 10000)
  double rho_decay = 0.99;    ///< per-iteration factor in (0, 1]
  double rho_floor = 1.0;     ///< decay stops here
  int iter_max = 2000;
  double residual_tol = 1e-4;
  double secular_tol = 1e-12;
  double gamma = 0.01;  ///< sidelobe power ratio (WSC only)

  /// Throws DomainError on an invalid schedule.
  void validate(bool with_sidelobes) const;
};

/// gamma = 10^(dSLL/10).
inline double gamma_from_dsll(double dsll_db) { return from_db(dsll_db); }

struct IterationRecord {
  int iter = 0;
  double g0_amp = 0.0;
  double g0_dbi = 0.0;  ///< 10 log10(2 g0^2)
  double residual_ml = 0.0;
  double residual_sl = 0.0;
  double rho1 = 0.0;
  double rho2 = 0.0;
  double dual_inc_1 = 0.0;  ///< max |u1(k+1) - u1(k)|
  double dual_inc_2 = 0.0;
};

struct AdmmState {
  CVector x;
  double g0 = 0.0;
  CVector g;
  CVector h;
  CVector u1;
  CVector u2;
  double rho1 = 0.0;
  double rho2 = 0.0;
  int iteration = 0;
  double residual_ml = std::numeric_limits<double>::infinity();
  double residual_sl = 0.0;
  bool converged = false;
  std::vector<IterationRecord> history;
};

/// u1 += (P^H x - g) / rho1 and u2 += (Q^H x - h) / rho2; refreshes the
/// residual fields with infinity norms. Returns the dual increments
/// (max-norm) for the mainlobe and sidelobe blocks.
std::pair<double, double> update_duals(AdmmState& state, const CMatrix& P, const CMatrix& Q);

/// Power-gain maximization without sidelobe constraint.
AdmmState run_wosc(const GainOperators& ops, const AdmmConfig& cfg);

/// Power-gain maximization with |Q^H x| <= sqrt(gamma) g0. An empty Q gives
/// exactly the run_wosc trajectory.
AdmmState run_wsc(const GainOperators& ops, const AdmmConfig& cfg);

/// `iter,g0_amp,g0_dbi,residual_ml,residual_sl,rho1,rho2,dual_inc_1,dual_inc_2`.
std::string history_csv(const std::vector<IterationRecord>& history);

}  // namespace beamgain
