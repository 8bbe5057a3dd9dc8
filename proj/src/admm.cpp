#include "beamgain/admm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <sstream>

#include "beamgain/errors.hpp"
#include "beamgain/sphere_lsq.hpp"

namespace beamgain {

void AdmmConfig::validate(bool with_sidelobes) const {
  const auto bad = [](const std::string& what) { throw DomainError("ADMM config: " + what); };
  if (!(rho_init > 1.0 && rho_init < 10000.0)) bad("rho_init must lie in (1, 10000)");
  if (with_sidelobes && !(rho2_init > 1.0 && rho2_init < 10000.0)) {
    bad("rho2_init must lie in (1, 10000)");
  }
  if (!(rho_decay > 0.0 && rho_decay <= 1.0)) bad("rho_decay must lie in (0, 1]");
  if (!(rho_floor > 0.0)) bad("rho_floor must be positive");
  if (iter_max < 1) bad("iter_max must be at least 1");
  if (!(residual_tol > 0.0)) bad("residual_tol must be positive");
  if (!(secular_tol > 0.0)) bad("secular_tol must be positive");
  if (with_sidelobes && !(gamma > 0.0)) bad("gamma must be positive");
}

std::pair<double, double> update_duals(AdmmState& state, const CMatrix& P, const CMatrix& Q) {
  const CVector r1 = P.adjoint() * state.x - state.g;
  state.u1 += r1 / state.rho1;
  state.residual_ml = r1.size() ? r1.cwiseAbs().maxCoeff() : 0.0;
  double inc2 = 0.0;
  state.residual_sl = 0.0;
  if (Q.cols() > 0) {
    const CVector r2 = Q.adjoint() * state.x - state.h;
    state.u2 += r2 / state.rho2;
    state.residual_sl = r2.cwiseAbs().maxCoeff();
    inc2 = state.residual_sl / state.rho2;
  }
  return {state.residual_ml / state.rho1, inc2};
}

namespace {

// Realified Hermitian H = P P^H + w Q Q^H, equal to M M^T for the stacked
// operator M = [Pt, sqrt(w) Qt].
RMatrix realified_gram(const CMatrix& P, const CMatrix& Q, double w) {
  CMatrix H = P * P.adjoint();
  if (Q.cols() > 0) H.noalias() += w * (Q * Q.adjoint());
  const Eigen::Index n = H.rows();
  RMatrix G(2 * n, 2 * n);
  G.topLeftCorner(n, n) = H.real();
  G.topRightCorner(n, n) = -H.imag();
  G.bottomLeftCorner(n, n) = H.imag();
  G.bottomRightCorner(n, n) = H.real();
  return 0.5 * (G + G.transpose());
}

std::string at_iteration(int k, const std::string& what) {
  std::ostringstream os;
  os << "iteration " << k << ": " << what;
  return os.str();
}

AdmmState run(const GainOperators& ops, const AdmmConfig& cfg, bool with_sidelobes) {
  const CMatrix& P = ops.P;
  const CMatrix Q = with_sidelobes ? ops.Q : CMatrix(ops.P.rows(), 0);
  if (P.cols() < 1) throw DomainError("mainlobe operator has no columns");
  cfg.validate(with_sidelobes && Q.cols() > 0);
  const Eigen::Index n = P.rows();
  const bool sidelobes = Q.cols() > 0;

  AdmmState st;
  st.x = CVector::Zero(n);
  st.u1 = CVector::Zero(P.cols());
  st.u2 = CVector::Zero(Q.cols());
  st.rho1 = cfg.rho_init;
  st.rho2 = sidelobes ? cfg.rho2_init : cfg.rho_init;
  st.history.reserve(static_cast<std::size_t>(std::min(cfg.iter_max, 100000)));

  std::unique_ptr<SphereLsqSolver> solver;
  double solver_weight = -1.0;

  while (st.iteration < cfg.iter_max) {
    const int k = st.iteration;
    try {
      // {g0, g, h} block
      const CVector z1 = P.adjoint() * st.x + st.rho1 * st.u1;
      GainSplit split;
      if (sidelobes) {
        const CVector z2 = Q.adjoint() * st.x + st.rho2 * st.u2;
        split = update_gh_wsc(z1, z2, st.rho1, st.rho2, cfg.gamma);
      } else {
        split = update_g_wosc(z1, st.rho1);
      }
      st.g0 = split.g0;
      st.g = std::move(split.g);
      st.h = std::move(split.h);

      // x block: min ||P^H x - d1||^2 + (rho1/rho2) ||Q^H x - d2||^2 on ||x|| = 1
      const double w = sidelobes ? st.rho1 / st.rho2 : 1.0;
      if (!solver || w != solver_weight) {
        solver = std::make_unique<SphereLsqSolver>(realified_gram(P, Q, w));
        solver_weight = w;
      }
      CVector target = P * (st.g - st.rho1 * st.u1);
      if (sidelobes) target.noalias() += w * (Q * (st.h - st.rho2 * st.u2));
      st.x = complexify_vector(solver->solve(realify_vector(target), cfg.secular_tol));
    } catch (const NumericalError& e) {
      throw NumericalError(at_iteration(k, e.what()));
    } catch (const DomainError& e) {
      throw DomainError(at_iteration(k, e.what()));
    }

    const auto [inc1, inc2] = update_duals(st, P, Q);
    ++st.iteration;

    if (n == 1 && !sidelobes) {
      // A single element has a flat pattern for every unit x; the constraint
      // set is met exactly by g = P^H x.
      st.g = P.adjoint() * st.x;
      st.g0 = st.g.cwiseAbs().minCoeff();
      st.residual_ml = 0.0;
    }

    IterationRecord rec;
    rec.iter = st.iteration;
    rec.g0_amp = st.g0;
    rec.g0_dbi = to_db(2.0 * st.g0 * st.g0);
    rec.residual_ml = st.residual_ml;
    rec.residual_sl = st.residual_sl;
    rec.rho1 = st.rho1;
    rec.rho2 = st.rho2;
    rec.dual_inc_1 = inc1;
    rec.dual_inc_2 = inc2;
    st.history.push_back(rec);

    if (st.residual_ml <= cfg.residual_tol && st.residual_sl <= cfg.residual_tol) {
      st.converged = true;
      break;
    }
    st.rho1 = std::max(cfg.rho_floor, st.rho1 * cfg.rho_decay);
    if (sidelobes) {
      st.rho2 = std::max(cfg.rho_floor, st.rho2 * cfg.rho_decay);
    } else {
      st.rho2 = st.rho1;
    }
  }
  return st;
}

}  // namespace

AdmmState run_wosc(const GainOperators& ops, const AdmmConfig& cfg) { return run(ops, cfg, false); }

AdmmState run_wsc(const GainOperators& ops, const AdmmConfig& cfg) { return run(ops, cfg, true); }

std::string history_csv(const std::vector<IterationRecord>& history) {
  std::string out = "iter,g0_amp,g0_dbi,residual_ml,residual_sl,rho1,rho2,dual_inc_1,dual_inc_2\n";
  char buf[512];
  for (const auto& r : history) {
    std::snprintf(buf, sizeof buf, "%d,%.12g,%.6f,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", r.iter,
                  r.g0_amp, r.g0_dbi, r.residual_ml, r.residual_sl, r.rho1, r.rho2, r.dual_inc_1,
                  r.dual_inc_2);
    out += buf;
  }
  return out;
}

}  // namespace beamgain
