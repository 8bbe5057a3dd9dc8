// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "beamgain/admm.hpp"
#include "beamgain/element_pattern.hpp"
#include "beamgain/gain_operators.hpp"
#include "beamgain/oracle.hpp"
#include "beamgain/subproblems.hpp"
#include "beamgain/sphere_lsq.hpp"
#include "beamgain/synthesis.hpp"

using namespace beamgain;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
  bool pass = true;
  std::string detail;
  void note(const char* fmt, ...) __attribute__((format(printf, 2, 3)));
};

void Verdict::note(const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  if (!detail.empty()) detail += "; ";
  detail += buf;
}

SynthesisProblem problem_for(const ArrayGeometry& geo, double bw, std::optional<double> dsll,
                             double rho) {
  SynthesisProblem p;
  p.geometry = std::make_shared<const ArrayGeometry>(geo);
  p.beamwidth_deg = bw;
  p.dsll_db = dsll;
  p.admm.rho_init = p.admm.rho2_init = rho;
  p.admm.rho_decay = 0.99;
  p.admm.iter_max = 2000;
  return p;
}

Verdict table_one() {
  Verdict v;
  const double bws[] = {10.0, 20.0, 30.0, 40.0};
  const double expected[] = {9.59, 7.04, 5.49, 4.36};
  for (int i = 0; i < 4; ++i) {
    const auto t0 = Clock::now();
    const SynthesisResult r = synthesize(problem_for(ula41(), bws[i], std::nullopt, 1000.0));
    const double secs = seconds_since(t0);
    const bool ok = std::abs(r.g0_dbi - expected[i]) <= 0.15 && secs < 60.0;
    v.pass = v.pass && ok;
    v.note("bw %g: G0 %.3f dBi (target %.2f +-0.15) %.2fs%s", bws[i], r.g0_dbi, expected[i], secs,
           ok ? "" : " MISS");
  }
  return v;
}

Verdict tables_two_three(SynthesisResult& minus20) {
  Verdict v;
  const double dslls[] = {-20.0, -25.0, -30.0, -35.0};
  const double expected[] = {7.03, 7.01, 6.98, 6.93};
  for (int i = 0; i < 4; ++i) {
    const auto t0 = Clock::now();
    SynthesisResult r = synthesize(problem_for(nonuniform41(), 20.0, dslls[i], 2000.0));
    const double secs = seconds_since(t0);
    const bool gain_ok = std::abs(r.g0_dbi - expected[i]) <= 0.2;
    const bool sll_ok = std::abs(r.osll_db - dslls[i]) <= 0.2;
    const bool ok = gain_ok && sll_ok && secs < 120.0;
    v.pass = v.pass && ok;
    v.note("dSLL %g: G0 %.3f dBi (target %.2f +-0.2), oSLL %.3f dB, %d it%s, %.2fs%s", dslls[i],
           r.g0_dbi, expected[i], r.osll_db, r.iterations, r.converged ? "" : " unconverged", secs,
           ok ? "" : " MISS");
    if (i == 0) minus20 = std::move(r);
  }
  return v;
}

Verdict convergence_profile(const SynthesisResult& r) {
  Verdict v;
  v.pass = r.converged && r.iterations <= 2000 && r.residual_ml < 1e-4 && r.residual_sl < 1e-4;
  v.note("dSLL -20: %d iterations, residual_ml %.2e, residual_sl %.2e, final dual increments %.2e/%.2e",
         r.iterations, r.residual_ml, r.residual_sl,
         r.history.empty() ? 0.0 : r.history.back().dual_inc_1,
         r.history.empty() ? 0.0 : r.history.back().dual_inc_2);
  return v;
}

Verdict subproblem_oracles() {
  Verdict v;
  const auto t0 = Clock::now();
  const auto sub = oracle::subproblem_suite(10000, 20240601);
  const auto sph = oracle::sphere_suite(1000, 20240602);
  const double secs = seconds_since(t0);
  v.pass = sub.passed() && sph.passed() && secs < 300.0;
  v.note("g/gh: %zu cases, %zu failures, worst gap %.2e", sub.cases, sub.failures, sub.worst_gap);
  v.note("sphere: %zu cases, %zu failures, worst gap %.2e", sph.cases, sph.failures, sph.worst_gap);
  v.note("%.1fs", secs);
  return v;
}

Verdict secular_certification() {
  Verdict v;
  const auto s = oracle::secular_suite(1000, 20240603);
  v.pass = s.passed();
  v.note("%zu systems, %zu failures, worst cost excess %.2e", s.cases, s.failures, s.worst_gap);
  return v;
}

Verdict invariant_suite() {
  Verdict v;
  std::mt19937_64 rng(20240604);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto cvec = [&](Eigen::Index n, double scale) {
    CVector out(n);
    for (Eigen::Index i = 0; i < n; ++i) out(i) = scale * cdouble(normal(rng), normal(rng));
    return out;
  };

  // unit norm of the x-update on rank-deficient and full operators
  int norm_bad = 0;
  for (int t = 0; t < 500; ++t) {
    const int n = 1 + t % 10, l = 1 + (t / 10) % 12;
    CMatrix P(n, l);
    for (Eigen::Index i = 0; i < P.size(); ++i) P(i) = cdouble(normal(rng), normal(rng));
    const Realified re = realify(P, cvec(l, 1.0 + t % 4));
    if (std::abs(solve_sphere_lsq(re.M, re.d).norm() - 1.0) > 1e-9) ++norm_bad;
  }

  // feasibility and phase preservation of the split
  int clamp_bad = 0, phase_bad = 0;
  std::uniform_real_distribution<double> lg(-3.0, 3.0);
  for (int t = 0; t < 2000; ++t) {
    const CVector z1 = cvec(1 + t % 12, std::pow(10.0, lg(rng) / 2));
    const CVector z2 = cvec(1 + (t / 12) % 12, std::pow(10.0, lg(rng) / 2));
    const double gamma = std::pow(10.0, -std::abs(lg(rng)));
    const GainSplit s = update_gh_wsc(z1, z2, std::pow(10.0, lg(rng)), std::pow(10.0, lg(rng)), gamma);
    const double cap = std::sqrt(gamma) * s.g0;
    for (Eigen::Index i = 0; i < z1.size(); ++i) {
      if (std::abs(s.g(i)) < s.g0 - 1e-12 * (1 + s.g0)) ++clamp_bad;
      if (std::abs(z1(i)) > 0 && std::abs(std::arg(s.g(i)) - std::arg(z1(i))) > 1e-12) ++phase_bad;
    }
    for (Eigen::Index i = 0; i < z2.size(); ++i) {
      if (std::abs(s.h(i)) > cap + 1e-12 * (1 + cap)) ++clamp_bad;
      if (std::abs(s.h(i)) > 0 && std::abs(std::arg(s.h(i)) - std::arg(z2(i))) > 1e-12) ++phase_bad;
    }
  }

  // gain scale invariance and factor fidelity
  int scale_bad = 0, factor_bad = 0;
  std::uniform_real_distribution<double> gap(0.3, 1.0);
  for (int t = 0; t < 20; ++t) {
    const int n = 1 + (t * 7) % 64;
    std::vector<double> pos(n);
    for (int i = 1; i < n; ++i) pos[i] = pos[i - 1] + gap(rng);
    const ArrayGeometry geo = ArrayGeometry::isotropic(pos);
    const CMatrix A = build_total_power_matrix(geo);
    const Factorization f = factorize(A);
    if ((f.factor.adjoint() * f.factor - A).norm() > 1e-10 * A.norm()) ++factor_bad;
    const CVector w = cvec(n, 1.0);
    const AngularGrid grid = AngularGrid::visible(1.0);
    const RVector base = power_gain_pattern(geo, A, w, grid.angles());
    for (double mag : {1e-3, 1.0, 1e3}) {
      const cdouble c = std::polar(mag, 2.0 * kPi * std::abs(normal(rng)));
      if ((power_gain_pattern(geo, A, c * w, grid.angles()) - base).cwiseAbs().maxCoeff() > 1e-9) {
        ++scale_bad;
      }
    }
  }

  // region disjointness with the guard
  int region_bad = 0;
  for (double c = -60.0; c <= 60.0; c += 2.5) {
    for (double bw : {5.0, 10.0, 20.0, 40.0}) {
      if (std::abs(c) + bw / 2 > 90.0) continue;
      const Regions r = assemble_regions(c, bw, 3.0, 0.5);
      for (double s : r.sidelobe) {
        if (std::max(r.mainlobe.front() - s, s - r.mainlobe.back()) < 3.0 - 1e-9) ++region_bad;
      }
    }
  }

  v.pass = norm_bad + clamp_bad + phase_bad + scale_bad + factor_bad + region_bad == 0;
  v.note("unit-norm %d, clamp %d, phase %d, scale %d, factor %d, region %d violations", norm_bad,
         clamp_bad, phase_bad, scale_bad, factor_bad, region_bad);
  return v;
}

Verdict aep_path() {
  Verdict v;
  const ArrayGeometry geo = nonuniform41().with_patterns(synth_aep(45.0, 41));
  const SynthesisResult r = synthesize(problem_for(geo, 20.0, -20.0, 2000.0));
  v.pass = r.converged && r.residual_ml < 1e-4 && r.residual_sl < 1e-4 && r.osll_db <= -19.8;
  v.note("G0 %.3f dBi, oSLL %.3f dB, %d iterations%s", r.g0_dbi, r.osll_db, r.iterations,
         r.converged ? "" : " unconverged");
  return v;
}

}  // namespace

int main() {
  SynthesisResult minus20;
  const std::vector<std::pair<int, std::function<Verdict()>>> criteria{
      {1, table_one},
      {2, [&] { return tables_two_three(minus20); }},
      {3, [&] { return convergence_profile(minus20); }},
      {4, subproblem_oracles},
      {5, secular_certification},
      {6, invariant_suite},
      {7, aep_path},
  };
  int failed = 0;
  for (const auto& [id, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v.pass = false;
      v.note("threw: %s", e.what());
    }
    if (!v.pass) ++failed;
    std::printf("CRITERION %d: %s | %s\n", id, v.pass ? "PASS" : "FAIL", v.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
