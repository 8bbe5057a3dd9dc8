#pragma once

#include "beamgain/types.hpp"

namespace beamgain {

/// Minimizer of the mainlobe (and optional sidelobe) auxiliary block.
struct GainSplit {
  double g0 = 0.0;  ///< amplitude-domain mainlobe floor
  CVector g;        ///< mainlobe auxiliaries, |g_l| >= g0
  CVector h;        ///< sidelobe auxiliaries, |h_s| <= sqrt(gamma) g0
  double cost = 0.0;
};

/// Phase of a complex number with arg(0) = 0.
inline cdouble unit_phase(cdouble z) {
  const double m = std::abs(z);
  return m > 0.0 ? z / m : cdouble(1.0, 0.0);
}

/// Global minimizer of  -g0 + 1/(2 rho) ||y - g||^2  s.t. |g_l| >= g0 > 0.
///
/// The moduli of y split (0, inf) into L+1 pieces. On each piece the clamp
/// set {m : |y_m| <= g0} is fixed and the cost is a 1-D quadratic in g0 with
/// stationary point (rho + sum_S |y_m|) / |S|; that point is clipped to the
/// piece and the cheapest candidate wins. g keeps the phase of y.
GainSplit update_g_wosc(const CVector& y, double rho);

/// Global minimizer of
///   -g0 + 1/(2 rho1) ||z1 - g||^2 + 1/(2 rho2) ||z2 - h||^2
/// s.t. |g_l| >= g0 and |h_s| <= sqrt(gamma) g0. Breakpoints are the merged
/// values {|z1|} and {|z2| / sqrt(gamma)}. Empty z2 delegates to
/// update_g_wosc.
GainSplit update_gh_wsc(const CVector& z1, const CVector& z2, double rho1, double rho2,
                        double gamma);

/// Objective of update_gh_wsc for a given g0 with g, h set to their optimal
/// clamps. Used by tests and the oracles.
double clamped_split_cost(const CVector& z1, const CVector& z2, double rho1, double rho2,
                          double gamma, double g0);

}  // namespace beamgain
