#pragma once

#include <span>

#include "beamgain/angular_grid.hpp"
#include "beamgain/array_geometry.hpp"
#include "beamgain/types.hpp"

namespace beamgain {

/// a_n(theta) = e_n(theta) * exp(j 2 pi r_n sin(theta)), r_n in wavelengths.
CVector steering_vector(const ArrayGeometry& geometry, double theta_deg);

/// Default Gauss-Legendre order used when element patterns are present.
inline int default_quadrature_order(std::size_t elements) {
  return 4 * static_cast<int>(elements) + 64;
}

/// A = integral over [-pi/2, pi/2] of a(theta) a(theta)^H cos(theta) dtheta.
///
/// Isotropic arrays use the closed form A_mn = 2 sinc(2 (r_m - r_n)); with
/// element patterns the integral is taken by Gauss-Legendre quadrature in
/// u = sin(theta). Throws DegenerateGeometryError when the smallest
/// eigenvalue is <= 1e-12 trace/N.
CMatrix build_total_power_matrix(const ArrayGeometry& geometry, int quadrature_order);
inline CMatrix build_total_power_matrix(const ArrayGeometry& geometry) {
  return build_total_power_matrix(geometry, default_quadrature_order(geometry.size()));
}

/// Same integral, always by quadrature (patterns treated as 1 if absent).
CMatrix total_power_matrix_quadrature(const ArrayGeometry& geometry, int quadrature_order);

struct Factorization {
  CMatrix factor;   ///< upper triangular C with C^H C = A
  CMatrix inverse;  ///< C^{-1}, upper triangular
};

/// Hermitian Cholesky-type factorization. Throws FactorizationError carrying
/// the failing pivot when a pivot is <= 1e-12 trace/N, DimensionError when A
/// is not square, DomainError when A is not Hermitian to 1e-12 relative.
Factorization factorize(const CMatrix& A);

/// Columns C^{-H} a(theta_l) for every angle of the grid (N x 0 if empty).
CMatrix build_region_operator(const ArrayGeometry& geometry, const CMatrix& factor_inverse,
                              std::span<const double> angles_deg);
inline CMatrix build_region_operator(const ArrayGeometry& geometry, const CMatrix& factor_inverse,
                                     const AngularGrid& grid) {
  return build_region_operator(geometry, factor_inverse, grid.angles());
}

/// Everything the ADMM engine consumes for one problem.
struct GainOperators {
  CMatrix A;
  CMatrix C;
  CMatrix C_inv;
  CMatrix P;  ///< mainlobe operator, N x L_ML
  CMatrix Q;  ///< sidelobe operator, N x L_SL (may have zero columns)

  std::size_t elements() const { return static_cast<std::size_t>(A.rows()); }
};

GainOperators build_gain_operators(const ArrayGeometry& geometry,
                                   std::span<const double> mainlobe_deg,
                                   std::span<const double> sidelobe_deg);

/// G(theta) = 2 |a(theta)^H w|^2 / (w^H A w) in dBi for every angle.
RVector power_gain_pattern(const ArrayGeometry& geometry, const CVector& w,
                           std::span<const double> angles_deg);
RVector power_gain_pattern(const ArrayGeometry& geometry, const CMatrix& A, const CVector& w,
                           std::span<const double> angles_deg);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int order, RVector& nodes, RVector& weights);

}  // namespace beamgain
