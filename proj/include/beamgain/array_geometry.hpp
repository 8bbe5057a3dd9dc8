#pragma once

#include <optional>
#include <string>
#include <vector>

#include "beamgain/element_pattern.hpp"
#include "beamgain/types.hpp"

namespace beamgain {

/// Linear array: element positions in wavelengths, per-element total
/// efficiency, and optional embedded (active) element patterns.
///
/// Positions must be strictly increasing and finite, efficiencies in (0, 1].
/// When element patterns are supplied there is one per element and each
/// covers [-90, 90] deg. Immutable after construction.
class ArrayGeometry {
 public:
  ArrayGeometry(std::vector<double> positions_lambda, std::vector<double> efficiencies,
                std::optional<std::vector<ElementPattern>> element_patterns = std::nullopt);

  /// Positions given in metres; divided by `wavelength_m` on construction.
  static ArrayGeometry from_metres(const std::vector<double>& positions_m, double wavelength_m,
                                   std::vector<double> efficiencies);

  /// Unit-efficiency isotropic array.
  static ArrayGeometry isotropic(std::vector<double> positions_lambda);

  /// Same positions and efficiencies with a different pattern set.
  ArrayGeometry with_patterns(std::optional<std::vector<ElementPattern>> patterns) const;

  std::size_t size() const noexcept { return positions_.size(); }
  const std::vector<double>& positions() const noexcept { return positions_; }
  const std::vector<double>& efficiencies() const noexcept { return efficiencies_; }
  bool has_element_patterns() const noexcept { return patterns_.has_value(); }
  const std::optional<std::vector<ElementPattern>>& element_patterns() const noexcept {
    return patterns_;
  }
  /// Positions are always stored in wavelengths once constructed.
  bool wavelength_normalized() const noexcept { return true; }

 private:
  std::vector<double> positions_;
  std::vector<double> efficiencies_;
  std::optional<std::vector<ElementPattern>> patterns_;
};

/// 41-element half-wavelength uniform array centred at the origin.
ArrayGeometry ula41();

/// 41-element origin-symmetric non-uniform array (positions 0, +-0.6215 ...
/// +-10 wavelengths).
ArrayGeometry nonuniform41();

/// Reads `position_lambda,efficiency` CSV.
ArrayGeometry load_geometry(const std::string& path);
ArrayGeometry parse_geometry(const std::string& csv_text);

/// `position_lambda,efficiency` CSV text, 12 significant digits.
std::string geometry_csv(const ArrayGeometry& geometry);

}  // namespace beamgain
