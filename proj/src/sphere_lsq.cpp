#include "beamgain/sphere_lsq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "beamgain/errors.hpp"

namespace beamgain {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// beta entries at or below this fraction of max|beta| are treated as exact zeros
constexpr double kZeroBeta = 1e-14;

bool active(double beta, double beta_max) { return std::abs(beta) > kZeroBeta * beta_max; }

}  // namespace

Realified realify(const CMatrix& P, const CVector& d1, double w1, const CMatrix& Q,
                  const CVector& d2, double w2) {
  const Eigen::Index n = P.rows();
  const Eigen::Index l1 = P.cols();
  const Eigen::Index l2 = Q.cols();
  if (d1.size() != l1 || d2.size() != l2 || (l2 > 0 && Q.rows() != n)) {
    throw DimensionError("realify: operator and target dimensions disagree");
  }
  if (!(w1 > 0.0) || (l2 > 0 && !(w2 > 0.0))) throw DomainError("realify: weights must be positive");
  const double s1 = std::sqrt(w1);
  const double s2 = std::sqrt(w2);
  Realified out;
  out.M.resize(2 * n, 2 * (l1 + l2));
  out.d.resize(2 * (l1 + l2));
  const auto place = [&](const CMatrix& X, const CVector& d, double s, Eigen::Index col0,
                         Eigen::Index cols) {
    out.M.block(0, col0, n, cols) = s * X.real();
    out.M.block(0, col0 + cols, n, cols) = -s * X.imag();
    out.M.block(n, col0, n, cols) = s * X.imag();
    out.M.block(n, col0 + cols, n, cols) = s * X.real();
    out.d.segment(col0, cols) = s * d.real();
    out.d.segment(col0 + cols, cols) = s * d.imag();
  };
  place(P, d1, s1, 0, l1);
  if (l2 > 0) place(Q, d2, s2, 2 * l1, l2);
  return out;
}

RVector realify_vector(const CVector& x) {
  RVector out(2 * x.size());
  out << x.real(), x.imag();
  return out;
}

CVector complexify_vector(const RVector& xt) {
  if (xt.size() % 2 != 0) throw DimensionError("realified vector has odd length");
  const Eigen::Index n = xt.size() / 2;
  CVector x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = cdouble(xt(i), xt(n + i));
  return x;
}

double secular_residual(const RVector& lambdas, const RVector& beta, double nu) {
  double sum = 0.0;
  for (Eigen::Index n = 0; n < lambdas.size(); ++n) {
    if (beta(n) == 0.0) continue;
    const double t = beta(n) / (nu - lambdas(n));
    sum += t * t;
  }
  return sum - 1.0;
}

double secular_root_cost(const RVector& lambdas, const RVector& beta, double nu) {
  double cost = 0.0;
  for (Eigen::Index n = 0; n < lambdas.size(); ++n) {
    if (beta(n) == 0.0) continue;
    const double gap = lambdas(n) - nu;
    cost += beta(n) * beta(n) * (2.0 * nu - lambdas(n)) / (gap * gap);
  }
  return cost;
}

std::pair<double, double> secular_bracket(const RVector& lambdas, const RVector& beta) {
  const double beta_max = beta.cwiseAbs().maxCoeff();
  std::size_t terms = 0;
  for (Eigen::Index n = 0; n < beta.size(); ++n) terms += active(beta(n), beta_max) ? 1 : 0;
  if (terms == 0) throw DomainError("secular equation has no nonzero terms");
  const double root_k = std::sqrt(static_cast<double>(terms));
  double lo = std::numeric_limits<double>::infinity();
  double min_unit = std::numeric_limits<double>::infinity();
  double max_scaled = -std::numeric_limits<double>::infinity();
  for (Eigen::Index n = 0; n < beta.size(); ++n) {
    if (!active(beta(n), beta_max)) continue;
    const double b = std::abs(beta(n));
    lo = std::min(lo, lambdas(n) - root_k * b);
    min_unit = std::min(min_unit, lambdas(n) - b);
    max_scaled = std::max(max_scaled, lambdas(n) - root_k * b);
  }
  return {lo, std::min(min_unit, max_scaled)};
}

double secular_bisect(const SecularSystem& sys, double tol) {
  if (sys.beta.size() == 0 || sys.beta.cwiseAbs().maxCoeff() == 0.0) {
    throw DomainError("secular equation needs a nonzero beta");
  }
  const double beta_max = sys.beta.cwiseAbs().maxCoeff();
  RVector beta = sys.beta;
  double pole = std::numeric_limits<double>::infinity();
  for (Eigen::Index n = 0; n < beta.size(); ++n) {
    if (!active(beta(n), beta_max)) {
      beta(n) = 0.0;
    } else {
      pole = std::min(pole, sys.lambdas(n));
    }
  }
  auto [lo, hi] = secular_bracket(sys.lambdas, beta);
  const auto f = [&](double nu) { return secular_residual(sys.lambdas, beta, nu); };

  double flo = f(lo);
  double fhi = f(hi);
  for (int k = 0; k < 8 && flo > 0.0; ++k) {
    lo -= 1e3 * kEps * (1.0 + std::abs(lo));
    flo = f(lo);
  }
  for (int k = 0; k < 8 && fhi < 0.0; ++k) {
    const double next = hi + 1e3 * kEps * (1.0 + std::abs(hi));
    if (!(next < pole)) break;
    hi = next;
    fhi = f(hi);
  }
  if (flo > 0.0 || fhi < 0.0) {
    std::ostringstream os;
    os.precision(17);
    os << "secular bracket [" << lo << ", " << hi << "] does not change sign (f1 = " << flo << ", "
       << fhi << ")";
    throw NumericalError(os.str());
  }
  if (std::abs(flo) <= tol) return lo;
  if (std::abs(fhi) <= tol) return hi;

  double nu = 0.5 * (lo + hi);
  while (true) {
    nu = 0.5 * (lo + hi);
    const double fm = f(nu);
    if (std::abs(fm) <= tol) return nu;
    if (fm < 0.0) {
      lo = nu;
    } else {
      hi = nu;
    }
    if (hi - lo <= 1e-14 * (1.0 + std::abs(nu))) break;
  }
  // Newton polish inside the final bracket; f1 is increasing and convex here.
  double fnu = f(nu);
  for (int it = 0; it < 5 && std::abs(fnu) > tol; ++it) {
    double slope = 0.0;
    for (Eigen::Index n = 0; n < beta.size(); ++n) {
      if (beta(n) == 0.0) continue;
      const double gap = nu - sys.lambdas(n);
      slope -= 2.0 * beta(n) * beta(n) / (gap * gap * gap);
    }
    if (!(slope > 0.0)) break;
    const double next = nu - fnu / slope;
    if (!(next < pole)) break;
    const double fnext = f(next);
    if (!(std::abs(fnext) < std::abs(fnu))) break;
    nu = next;
    fnu = fnext;
  }
  return nu;
}

SphereLsqSolver::SphereLsqSolver(const RMatrix& gram) {
  if (gram.rows() != gram.cols() || gram.rows() == 0) {
    throw DimensionError("Gram matrix must be square and nonempty");
  }
  Eigen::SelfAdjointEigenSolver<RMatrix> eig(gram);
  if (eig.info() != Eigen::Success) throw NumericalError("Gram eigendecomposition failed");
  lambdas_ = eig.eigenvalues();
  U_ = eig.eigenvectors();
}

SecularSystem SphereLsqSolver::system(const RVector& rhs) const {
  if (rhs.size() != lambdas_.size()) throw DimensionError("right-hand side does not match Gram");
  return {lambdas_, U_, U_.transpose() * rhs};
}

RVector SphereLsqSolver::solve(const RVector& rhs, double tol) const {
  SecularSystem sys = system(rhs);
  const Eigen::Index m = lambdas_.size();
  const double beta_norm = sys.beta.norm();
  if (!std::isfinite(beta_norm)) throw NumericalError("sphere solve: non-finite right-hand side");
  if (beta_norm == 0.0) return U_.col(0);  // Rayleigh-quotient minimizer

  // Bottom eigenspace and the "hard case": rhs has no component there and the
  // unconstrained solution shifted to lambda_min lies inside the sphere.
  const double lam_scale = std::max(std::abs(lambdas_(m - 1)), std::abs(lambdas_(0)));
  const double lam_tol = 1e-10 * std::max(lam_scale, std::numeric_limits<double>::min());
  const double beta_tol = 1e-11 * beta_norm;
  Eigen::Index bottom = 0;
  while (bottom < m && lambdas_(bottom) <= lambdas_(0) + lam_tol) ++bottom;
  bool rhs_in_bottom = false;
  for (Eigen::Index n = 0; n < bottom; ++n) rhs_in_bottom |= std::abs(sys.beta(n)) > beta_tol;
  for (Eigen::Index n = 0; n < m; ++n) {
    if (std::abs(sys.beta(n)) <= beta_tol) sys.beta(n) = 0.0;
  }

  RVector alpha = RVector::Zero(m);
  if (!rhs_in_bottom) {
    double inside = 0.0;
    for (Eigen::Index n = bottom; n < m; ++n) {
      alpha(n) = sys.beta(n) / (lambdas_(n) - lambdas_(0));
      inside += alpha(n) * alpha(n);
    }
    if (inside <= 1.0) {
      alpha(0) = std::sqrt(1.0 - inside);
      RVector x = U_ * alpha;
      return x / x.norm();
    }
  }
  const double nu = secular_bisect(sys, tol);
  for (Eigen::Index n = 0; n < m; ++n) {
    alpha(n) = sys.beta(n) == 0.0 ? 0.0 : sys.beta(n) / (lambdas_(n) - nu);
  }
  RVector x = U_ * alpha;
  return x / x.norm();
}

RVector solve_sphere_lsq(const RMatrix& M, const RVector& d, double tol) {
  if (M.cols() != d.size()) throw DimensionError("sphere solve: M and d disagree");
  if (M.rows() == 0 || M.cwiseAbs().maxCoeff() == 0.0) throw DomainError("sphere solve: M is zero");
  const SphereLsqSolver solver(M * M.transpose());
  return solver.solve(M * d, tol);
}

double sphere_lsq_cost(const RMatrix& M, const RVector& d, const RVector& xt) {
  return (M.transpose() * xt - d).squaredNorm();
}

}  // namespace beamgain
