#pragma once

#include <utility>

#include "beamgain/types.hpp"

namespace beamgain {

/// Real stacked form of a complex least-squares term.
struct Realified {
  RMatrix M;  ///< 2N x 2(L1 + L2)
  RVector d;  ///< length 2(L1 + L2)
};

/// Builds M = [sqrt(w1) Pt, sqrt(w2) Qt] with Pt = [Re P, -Im P; Im P, Re P]
/// and d = [sqrt(w1) (Re d1; Im d1); sqrt(w2) (Re d2; Im d2)], so that
///   ||M^T xt - d||^2 = w1 ||P^H x - d1||^2 + w2 ||Q^H x - d2||^2
/// with xt = [Re x; Im x]. Q may have zero columns.
Realified realify(const CMatrix& P, const CVector& d1, double w1, const CMatrix& Q,
                  const CVector& d2, double w2);
inline Realified realify(const CMatrix& P, const CVector& d) {
  return realify(P, d, 1.0, CMatrix(P.rows(), 0), CVector(), 1.0);
}

RVector realify_vector(const CVector& x);
CVector complexify_vector(const RVector& xt);

/// Eigen-decomposed Gram matrix with the projected right-hand side.
struct SecularSystem {
  RVector lambdas;  ///< ascending
  RMatrix U;        ///< orthonormal eigenvectors, column n for lambdas(n)
  RVector beta;     ///< U^T M d
};

/// f1(nu) = sum (beta_n / (nu - lambda_n))^2 - 1.
double secular_residual(const RVector& lambdas, const RVector& beta, double nu);

/// Cost of the sphere problem at a root: sum beta^2 (2 nu - lambda) / (lambda - nu)^2,
/// excluding the constant ||d||^2.
double secular_root_cost(const RVector& lambdas, const RVector& beta, double nu);

/// Interval guaranteed to contain the smallest root:
///   [min(lambda - sqrt(K)|beta|), min(min(lambda - |beta|), max(lambda - sqrt(K)|beta|))]
/// over the K terms with nonzero beta.
std::pair<double, double> secular_bracket(const RVector& lambdas, const RVector& beta);

/// Smallest root of f1 by bisection inside secular_bracket. Stops when
/// |f1| <= tol or the bracket width falls below 1e-14 (1 + |nu|). Throws
/// NumericalError when the bracket does not change sign, DomainError when
/// beta is identically zero.
double secular_bisect(const SecularSystem& sys, double tol = 1e-12);

/// Minimizes ||M^T xt - d||^2 over the unit sphere with the Gram matrix
/// factored once; reuse it while M is unchanged.
class SphereLsqSolver {
 public:
  explicit SphereLsqSolver(const RMatrix& gram);

  /// `rhs` is M d. Returns a unit vector.
  RVector solve(const RVector& rhs, double tol = 1e-12) const;

  SecularSystem system(const RVector& rhs) const;
  const RVector& lambdas() const noexcept { return lambdas_; }
  const RMatrix& eigenvectors() const noexcept { return U_; }

 private:
  RVector lambdas_;
  RMatrix U_;
};

/// One-shot wrapper: Gram = M M^T, rhs = M d.
RVector solve_sphere_lsq(const RMatrix& M, const RVector& d, double tol = 1e-12);

/// ||M^T xt - d||^2.
double sphere_lsq_cost(const RMatrix& M, const RVector& d, const RVector& xt);

}  // namespace beamgain
