#include "beamgain/subproblems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "beamgain/errors.hpp"

namespace beamgain {

namespace {

void check_finite(const CVector& v, const char* name) {
  if (!v.allFinite()) throw DomainError(std::string(name) + " has non-finite entries");
}

GainSplit clamp_to(const CVector& z1, const CVector& z2, double root_gamma, double g0) {
  GainSplit out;
  out.g0 = g0;
  out.g.resize(z1.size());
  for (Eigen::Index l = 0; l < z1.size(); ++l) {
    out.g(l) = std::max(g0, std::abs(z1(l))) * unit_phase(z1(l));
  }
  out.h.resize(z2.size());
  const double cap = root_gamma * g0;
  for (Eigen::Index s = 0; s < z2.size(); ++s) {
    out.h(s) = std::min(cap, std::abs(z2(s))) * unit_phase(z2(s));
  }
  return out;
}

}  // namespace

double clamped_split_cost(const CVector& z1, const CVector& z2, double rho1, double rho2,
                          double gamma, double g0) {
  const double rg = std::sqrt(gamma);
  double ml = 0.0;
  for (Eigen::Index l = 0; l < z1.size(); ++l) {
    const double e = g0 - std::abs(z1(l));
    if (e > 0.0) ml += e * e;
  }
  double sl = 0.0;
  for (Eigen::Index s = 0; s < z2.size(); ++s) {
    const double e = std::abs(z2(s)) - rg * g0;
    if (e > 0.0) sl += e * e;
  }
  return -g0 + ml / (2.0 * rho1) + (z2.size() > 0 ? sl / (2.0 * rho2) : 0.0);
}

GainSplit update_g_wosc(const CVector& y, double rho) {
  return update_gh_wsc(y, CVector(), rho, 1.0, 1.0);
}

GainSplit update_gh_wsc(const CVector& z1, const CVector& z2, double rho1, double rho2,
                        double gamma) {
  if (z1.size() == 0) throw DomainError("mainlobe vector is empty");
  if (!(rho1 > 0.0)) throw DomainError("rho1 must be positive");
  check_finite(z1, "mainlobe vector");
  const bool sidelobes = z2.size() > 0;
  if (sidelobes) {
    if (!(rho2 > 0.0)) throw DomainError("rho2 must be positive");
    if (!(gamma > 0.0)) throw DomainError("gamma must be positive");
    check_finite(z2, "sidelobe vector");
  }
  const double rg = std::sqrt(gamma);

  // Mainlobe moduli ascending (clamp set grows from the left), sidelobe
  // moduli scaled to g0 units (clamp set shrinks from the left).
  std::vector<double> a1(static_cast<std::size_t>(z1.size()));
  for (Eigen::Index l = 0; l < z1.size(); ++l) a1[static_cast<std::size_t>(l)] = std::abs(z1(l));
  std::sort(a1.begin(), a1.end());
  std::vector<double> a2;
  if (sidelobes) {
    a2.resize(static_cast<std::size_t>(z2.size()));
    for (Eigen::Index s = 0; s < z2.size(); ++s) a2[static_cast<std::size_t>(s)] = std::abs(z2(s));
    std::sort(a2.begin(), a2.end());
  }
  std::vector<double> breaks;
  breaks.reserve(a1.size() + a2.size());
  for (double v : a1) breaks.push_back(v);
  for (double v : a2) breaks.push_back(v / rg);
  std::sort(breaks.begin(), breaks.end());

  // Suffix sums of sidelobe moduli and running prefix sums of mainlobe moduli.
  std::vector<double> suffix2(a2.size() + 1, 0.0), suffix2_sq(a2.size() + 1, 0.0);
  for (std::size_t s = a2.size(); s-- > 0;) {
    suffix2[s] = suffix2[s + 1] + a2[s];
    suffix2_sq[s] = suffix2_sq[s + 1] + a2[s] * a2[s];
  }

  double best_g0 = 0.0;
  double best_cost = std::numeric_limits<double>::infinity();
  std::size_t n1 = 0;  // mainlobe entries with |z1| <= lo
  std::size_t i2 = 0;  // first sidelobe entry with |z2|/rg > lo
  double sum1 = 0.0, sum1_sq = 0.0;
  double lo = 0.0;
  for (std::size_t piece = 0; piece <= breaks.size(); ++piece) {
    const double hi = piece < breaks.size() ? breaks[piece] : std::numeric_limits<double>::infinity();
    if (piece > 0) lo = breaks[piece - 1];
    while (n1 < a1.size() && a1[n1] <= lo) {
      sum1 += a1[n1];
      sum1_sq += a1[n1] * a1[n1];
      ++n1;
    }
    while (i2 < a2.size() && a2[i2] / rg <= lo) ++i2;
    if (hi < lo) continue;
    // On [lo, hi]: cost = -g0 + sum_{clamped ml}(g0-a)^2/2rho1 + sum_{clamped sl}(a-rg g0)^2/2rho2
    const double n2 = static_cast<double>(a2.size() - i2);
    const double curvature = static_cast<double>(n1) / rho1 + (sidelobes ? n2 * gamma / rho2 : 0.0);
    const double slope = 1.0 + sum1 / rho1 + (sidelobes ? rg * suffix2[i2] / rho2 : 0.0);
    double g0;
    if (curvature > 0.0) {
      g0 = std::clamp(slope / curvature, lo, hi);
    } else {
      g0 = hi;  // cost decreases linearly across the piece
    }
    if (!std::isfinite(g0)) continue;
    const double offset = sum1_sq / (2.0 * rho1) + (sidelobes ? suffix2_sq[i2] / (2.0 * rho2) : 0.0);
    const double cost = 0.5 * curvature * g0 * g0 - slope * g0 + offset;
    if (cost < best_cost) {
      best_cost = cost;
      best_g0 = g0;
    }
  }
  GainSplit out = clamp_to(z1, z2, rg, best_g0);
  out.cost = clamped_split_cost(z1, z2, rho1, rho2, gamma, best_g0);
  return out;
}

}  // namespace beamgain
