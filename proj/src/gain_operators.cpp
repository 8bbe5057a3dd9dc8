#include "beamgain/gain_operators.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <sstream>

#include "beamgain/errors.hpp"

namespace beamgain {

namespace {

double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = kPi * x;
  return std::sin(px) / px;
}

void check_degenerate(const CMatrix& A) {
  const auto n = static_cast<double>(A.rows());
  const double trace = A.diagonal().real().sum();
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(A, Eigen::EigenvaluesOnly);
  const double smallest = eig.eigenvalues()(0);
  if (!(smallest > 1e-12 * trace / n)) {
    std::ostringstream os;
    os << "total-power matrix is numerically indefinite (smallest eigenvalue " << smallest
       << ", trace " << trace << ")";
    throw DegenerateGeometryError(os.str());
  }
}

}  // namespace

CVector steering_vector(const ArrayGeometry& geometry, double theta_deg) {
  if (!std::isfinite(theta_deg) || theta_deg < -90.0 - 1e-9 || theta_deg > 90.0 + 1e-9) {
    std::ostringstream os;
    os << "steering angle " << theta_deg << " deg outside [-90, 90]";
    throw DomainError(os.str());
  }
  const double s = std::sin(deg_to_rad(theta_deg));
  const auto& pos = geometry.positions();
  CVector a(static_cast<Eigen::Index>(pos.size()));
  for (std::size_t n = 0; n < pos.size(); ++n) {
    a(static_cast<Eigen::Index>(n)) = std::polar(1.0, 2.0 * kPi * pos[n] * s);
  }
  if (const auto& patterns = geometry.element_patterns()) {
    for (std::size_t n = 0; n < pos.size(); ++n) {
      a(static_cast<Eigen::Index>(n)) *= (*patterns)[n].at(theta_deg);
    }
  }
  return a;
}

void gauss_legendre(int order, RVector& nodes, RVector& weights) {
  if (order < 1) throw DomainError("quadrature order must be positive");
  nodes.resize(order);
  weights.resize(order);
  // P_order(x) and its derivative by the three-term recurrence
  const auto legendre = [order](double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= order; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = order * (x * p1 - p0) / (x * x - 1.0);
    return std::pair{p1, dp};
  };
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes(i) = -x;
    nodes(order - 1 - i) = x;
    weights(i) = w;
    weights(order - 1 - i) = w;
  }
  if (order % 2 == 1) nodes(order / 2) = 0.0;
}

CMatrix total_power_matrix_quadrature(const ArrayGeometry& geometry, int quadrature_order) {
  const auto n = static_cast<Eigen::Index>(geometry.size());
  RVector u, wt;
  gauss_legendre(quadrature_order, u, wt);
  CMatrix A = CMatrix::Zero(n, n);
  for (Eigen::Index q = 0; q < u.size(); ++q) {
    const double theta = std::asin(std::clamp(u(q), -1.0, 1.0)) * 180.0 / kPi;
    const CVector a = steering_vector(geometry, theta);
    A.noalias() += wt(q) * (a * a.adjoint());
  }
  // enforce exact Hermitian symmetry
  return 0.5 * (A + CMatrix(A.adjoint()));
}

CMatrix build_total_power_matrix(const ArrayGeometry& geometry, int quadrature_order) {
  const std::size_t n = geometry.size();
  if (quadrature_order < 2 * static_cast<int>(n) + 32) {
    throw DomainError("quadrature order must be at least 2N + 32");
  }
  CMatrix A;
  if (geometry.has_element_patterns()) {
    A = total_power_matrix_quadrature(geometry, quadrature_order);
  } else {
    const auto& r = geometry.positions();
    A.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t m = 0; m < n; ++m) {
      for (std::size_t k = 0; k < n; ++k) {
        A(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k)) =
            cdouble(2.0 * sinc(2.0 * (r[m] - r[k])), 0.0);
      }
    }
  }
  check_degenerate(A);
  return A;
}

Factorization factorize(const CMatrix& A) {
  if (A.rows() != A.cols() || A.rows() == 0) throw DimensionError("factorize needs a square matrix");
  const Eigen::Index n = A.rows();
  const double scale = A.norm();
  if ((A - A.adjoint()).norm() > 1e-12 * scale) throw DomainError("matrix is not Hermitian");
  const double threshold = 1e-12 * A.diagonal().real().sum() / static_cast<double>(n);

  // Row-oriented Cholesky producing upper-triangular C with A = C^H C.
  CMatrix C = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    cdouble diag = A(i, i);
    for (Eigen::Index k = 0; k < i; ++k) diag -= std::conj(C(k, i)) * C(k, i);
    const double pivot = diag.real();
    if (!(pivot > threshold) || !std::isfinite(pivot)) {
      throw FactorizationError(static_cast<std::size_t>(i), pivot);
    }
    const double cii = std::sqrt(pivot);
    C(i, i) = cii;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      cdouble s = A(i, j);
      for (Eigen::Index k = 0; k < i; ++k) s -= std::conj(C(k, i)) * C(k, j);
      C(i, j) = s / cii;
    }
  }
  CMatrix inv = C.triangularView<Eigen::Upper>().solve(CMatrix::Identity(n, n));
  inv.triangularView<Eigen::StrictlyLower>().setZero();
  return {std::move(C), std::move(inv)};
}

CMatrix build_region_operator(const ArrayGeometry& geometry, const CMatrix& factor_inverse,
                              std::span<const double> angles_deg) {
  const auto n = static_cast<Eigen::Index>(geometry.size());
  if (factor_inverse.rows() != n || factor_inverse.cols() != n) {
    throw DimensionError("factor inverse does not match element count");
  }
  const CMatrix inv_h = factor_inverse.adjoint();
  CMatrix out(n, static_cast<Eigen::Index>(angles_deg.size()));
  for (std::size_t l = 0; l < angles_deg.size(); ++l) {
    out.col(static_cast<Eigen::Index>(l)).noalias() = inv_h * steering_vector(geometry, angles_deg[l]);
  }
  return out;
}

GainOperators build_gain_operators(const ArrayGeometry& geometry,
                                   std::span<const double> mainlobe_deg,
                                   std::span<const double> sidelobe_deg) {
  GainOperators ops;
  ops.A = build_total_power_matrix(geometry);
  auto f = factorize(ops.A);
  ops.C = std::move(f.factor);
  ops.C_inv = std::move(f.inverse);
  ops.P = build_region_operator(geometry, ops.C_inv, mainlobe_deg);
  ops.Q = build_region_operator(geometry, ops.C_inv, sidelobe_deg);
  return ops;
}

RVector power_gain_pattern(const ArrayGeometry& geometry, const CMatrix& A, const CVector& w,
                           std::span<const double> angles_deg) {
  if (w.size() != static_cast<Eigen::Index>(geometry.size()) || A.rows() != w.size()) {
    throw DimensionError("weight vector does not match element count");
  }
  const double total = (w.adjoint() * A * w)(0, 0).real();
  if (w.squaredNorm() == 0.0 || !(total > 0.0)) throw DomainError("weight vector is zero");
  RVector out(static_cast<Eigen::Index>(angles_deg.size()));
  for (std::size_t i = 0; i < angles_deg.size(); ++i) {
    const cdouble field = steering_vector(geometry, angles_deg[i]).dot(w);  // a^H w
    out(static_cast<Eigen::Index>(i)) = to_db(2.0 * std::norm(field) / total);
  }
  return out;
}

RVector power_gain_pattern(const ArrayGeometry& geometry, const CVector& w,
                           std::span<const double> angles_deg) {
  return power_gain_pattern(geometry, build_total_power_matrix(geometry), w, angles_deg);
}

}  // namespace beamgain
