#pragma once

#include <string>
#include <vector>

#include "beamgain/types.hpp"

namespace beamgain {

/// Tabulated complex element pattern, linearly interpolated in angle.
class ElementPattern {
 public:
  struct Sample {
    double angle_deg;
    cdouble value;
  };

  /// Angles must be strictly increasing and finite.
  explicit ElementPattern(std::vector<Sample> samples);

  /// Throws IngestionError if `angle_deg` lies outside the table.
  cdouble at(double angle_deg) const;

  bool covers(double lo_deg, double hi_deg) const;
  double min_angle() const { return samples_.front().angle_deg; }
  double max_angle() const { return samples_.back().angle_deg; }
  const std::vector<Sample>& samples() const noexcept { return samples_; }

 private:
  std::vector<Sample> samples_;
};

/// Reads `element,angle_deg,re,im` CSV. Elements are numbered from 0 and must
/// be contiguous; when `expected_elements` is nonzero the count must match.
std::vector<ElementPattern> load_aep(const std::string& path, std::size_t expected_elements = 0);

/// Same parser over in-memory CSV text.
std::vector<ElementPattern> parse_aep(const std::string& csv_text, std::size_t expected_elements = 0);

/// Real cosine-power taper cos^q(theta) whose 3-dB power half-width equals
/// `half_width_deg` (i.e. |e|^2 = 1/2 at +-half_width_deg), sampled on a
/// 0.25 deg table over [-90, 90] with a -40 dB floor, replicated for
/// `elements` elements.
std::vector<ElementPattern> synth_aep(double half_width_deg, std::size_t elements);

}  // namespace beamgain
