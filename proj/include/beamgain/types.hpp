#pragma once

#include <complex>

#include <Eigen/Dense>

namespace beamgain {

using cdouble = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }

/// Power ratio to decibels.
inline double to_db(double power_ratio) { return 10.0 * std::log10(power_ratio); }
inline double from_db(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace beamgain
