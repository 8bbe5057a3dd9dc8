#include "beamgain/element_pattern.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "beamgain/csv.hpp"
#include "beamgain/errors.hpp"

namespace beamgain {

namespace {
constexpr double kCoverTol = 1e-9;
}

ElementPattern::ElementPattern(std::vector<Sample> samples) : samples_(std::move(samples)) {
  if (samples_.empty()) throw IngestionError("element pattern table is empty");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const auto& s = samples_[i];
    if (!std::isfinite(s.angle_deg) || !std::isfinite(s.value.real()) ||
        !std::isfinite(s.value.imag())) {
      throw IngestionError("element pattern table has non-finite entries");
    }
    if (i > 0 && !(s.angle_deg > samples_[i - 1].angle_deg)) {
      throw IngestionError("element pattern angles must be strictly increasing");
    }
  }
}

bool ElementPattern::covers(double lo_deg, double hi_deg) const {
  return min_angle() <= lo_deg + kCoverTol && max_angle() >= hi_deg - kCoverTol;
}

cdouble ElementPattern::at(double angle_deg) const {
  if (angle_deg < min_angle() - kCoverTol || angle_deg > max_angle() + kCoverTol) {
    std::ostringstream os;
    os << "element pattern table [" << min_angle() << ", " << max_angle()
       << "] deg does not cover " << angle_deg << " deg";
    throw IngestionError(os.str());
  }
  if (samples_.size() == 1) return samples_.front().value;
  auto hi = std::upper_bound(samples_.begin(), samples_.end(), angle_deg,
                             [](double a, const Sample& s) { return a < s.angle_deg; });
  if (hi == samples_.begin()) return samples_.front().value;
  if (hi == samples_.end()) return samples_.back().value;
  const auto lo = std::prev(hi);
  const double t = (angle_deg - lo->angle_deg) / (hi->angle_deg - lo->angle_deg);
  return lo->value + t * (hi->value - lo->value);
}

std::vector<ElementPattern> parse_aep(const std::string& csv_text, std::size_t expected_elements) {
  const CsvTable table = parse_csv(csv_text, {"element", "angle_deg", "re", "im"});
  std::vector<std::vector<ElementPattern::Sample>> rows;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const double element = row[0];
    if (element < 0 || element != std::floor(element)) {
      throw IngestionError("AEP row " + std::to_string(r + 2) + ": bad element index");
    }
    const auto idx = static_cast<std::size_t>(element);
    if (idx >= rows.size()) rows.resize(idx + 1);
    rows[idx].push_back({row[1], cdouble(row[2], row[3])});
  }
  if (expected_elements != 0 && rows.size() != expected_elements) {
    std::ostringstream os;
    os << "AEP file has " << rows.size() << " elements, geometry has " << expected_elements;
    throw IngestionError(os.str());
  }
  std::vector<ElementPattern> patterns;
  patterns.reserve(rows.size());
  for (std::size_t e = 0; e < rows.size(); ++e) {
    if (rows[e].empty()) throw IngestionError("AEP file has no rows for element " + std::to_string(e));
    ElementPattern p(std::move(rows[e]));
    if (!p.covers(-90.0, 90.0)) {
      throw IngestionError("AEP table of element " + std::to_string(e) + " does not cover [-90, 90]");
    }
    patterns.push_back(std::move(p));
  }
  return patterns;
}

std::vector<ElementPattern> load_aep(const std::string& path, std::size_t expected_elements) {
  return parse_aep(read_text_file(path), expected_elements);
}

std::vector<ElementPattern> synth_aep(double half_width_deg, std::size_t elements) {
  if (!(half_width_deg > 0.0 && half_width_deg < 90.0)) {
    throw DomainError("synthetic AEP half width must lie in (0, 90) deg");
  }
  // |cos^q|^2 = 1/2 at the half width
  const double q = std::log(0.5) / (2.0 * std::log(std::cos(deg_to_rad(half_width_deg))));
  std::vector<ElementPattern::Sample> table;
  constexpr double kStep = 0.25;
  constexpr double kFloor = 1e-2;  // -40 dB amplitude floor keeps endfire columns nonzero
  for (int k = 0; k <= static_cast<int>(180.0 / kStep); ++k) {
    const double angle = -90.0 + k * kStep;
    const double c = std::max(0.0, std::cos(deg_to_rad(angle)));
    table.push_back({angle, cdouble(std::max(kFloor, std::pow(c, q)), 0.0)});
  }
  return std::vector<ElementPattern>(elements, ElementPattern(table));
}

}  // namespace beamgain
