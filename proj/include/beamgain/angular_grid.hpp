#pragma once

#include <span>
#include <vector>

namespace beamgain {

/// Uniformly spaced angles in degrees inside [-90, 90].
class AngularGrid {
 public:
  AngularGrid() = default;

  /// Samples [first, last] at `resolution`, both endpoints included. `last`
  /// is reached within 1e-9 deg or the grid stops at the last lattice point
  /// below it.
  static AngularGrid span(double first_deg, double last_deg, double resolution_deg);

  /// Full visible region [-90, 90].
  static AngularGrid visible(double resolution_deg) { return span(-90.0, 90.0, resolution_deg); }

  /// Arbitrary list; spacing is checked against `resolution_deg`.
  static AngularGrid from_angles(std::vector<double> angles_deg, double resolution_deg);

  std::span<const double> angles() const noexcept { return angles_; }
  double resolution() const noexcept { return resolution_; }
  std::size_t size() const noexcept { return angles_.size(); }
  bool empty() const noexcept { return angles_.empty(); }
  double front() const { return angles_.front(); }
  double back() const { return angles_.back(); }

 private:
  std::vector<double> angles_;
  double resolution_ = 0.0;
};

}  // namespace beamgain
