#include "beamgain/angular_grid.hpp"

#include <cmath>
#include <sstream>

#include "beamgain/errors.hpp"

namespace beamgain {

namespace {

constexpr double kSpacingTol = 1e-12;
constexpr double kEndpointTol = 1e-9;

void check_visible(double angle) {
  if (!std::isfinite(angle) || angle < -90.0 - kEndpointTol || angle > 90.0 + kEndpointTol) {
    std::ostringstream os;
    os << "angle " << angle << " deg outside [-90, 90]";
    throw DomainError(os.str());
  }
}

}  // namespace

AngularGrid AngularGrid::span(double first_deg, double last_deg, double resolution_deg) {
  if (!(resolution_deg > 0.0) || !std::isfinite(resolution_deg)) {
    throw DomainError("angular resolution must be positive");
  }
  check_visible(first_deg);
  check_visible(last_deg);
  AngularGrid grid;
  grid.resolution_ = resolution_deg;
  if (last_deg < first_deg - kEndpointTol) return grid;
  const auto steps =
      static_cast<long>(std::floor((last_deg - first_deg) / resolution_deg + kEndpointTol));
  grid.angles_.reserve(static_cast<std::size_t>(steps) + 1);
  for (long k = 0; k <= steps; ++k) {
    double a = first_deg + static_cast<double>(k) * resolution_deg;
    // snap lattice points that land on the visible-region edge
    if (std::abs(a - 90.0) < kEndpointTol) a = 90.0;
    if (std::abs(a + 90.0) < kEndpointTol) a = -90.0;
    grid.angles_.push_back(a);
  }
  return grid;
}

AngularGrid AngularGrid::from_angles(std::vector<double> angles_deg, double resolution_deg) {
  if (!(resolution_deg > 0.0)) throw DomainError("angular resolution must be positive");
  for (std::size_t i = 0; i < angles_deg.size(); ++i) {
    check_visible(angles_deg[i]);
    if (i > 0 && std::abs(angles_deg[i] - angles_deg[i - 1] - resolution_deg) > kSpacingTol) {
      throw DomainError("grid spacing does not match the stated resolution");
    }
  }
  AngularGrid grid;
  grid.angles_ = std::move(angles_deg);
  grid.resolution_ = resolution_deg;
  return grid;
}

}  // namespace beamgain
