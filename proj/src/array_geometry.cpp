#include "beamgain/array_geometry.hpp"

#include <cmath>
#include <cstdio>

#include "beamgain/csv.hpp"
#include "beamgain/errors.hpp"

namespace beamgain {

ArrayGeometry::ArrayGeometry(std::vector<double> positions_lambda, std::vector<double> efficiencies,
                             std::optional<std::vector<ElementPattern>> element_patterns)
    : positions_(std::move(positions_lambda)),
      efficiencies_(std::move(efficiencies)),
      patterns_(std::move(element_patterns)) {
  if (positions_.empty()) throw DomainError("array has no elements");
  if (efficiencies_.size() != positions_.size()) {
    throw DimensionError("efficiency count does not match element count");
  }
  for (std::size_t n = 0; n < positions_.size(); ++n) {
    if (!std::isfinite(positions_[n])) throw DomainError("element position is not finite");
    if (n > 0 && !(positions_[n] > positions_[n - 1])) {
      throw DomainError("element positions must be strictly increasing");
    }
    if (!(efficiencies_[n] > 0.0 && efficiencies_[n] <= 1.0)) {
      throw DomainError("element efficiency must lie in (0, 1]");
    }
  }
  if (patterns_) {
    if (patterns_->size() != positions_.size()) {
      throw IngestionError("element pattern count does not match element count");
    }
    for (const auto& p : *patterns_) {
      if (!p.covers(-90.0, 90.0)) throw IngestionError("element pattern does not cover [-90, 90]");
    }
  }
}

ArrayGeometry ArrayGeometry::from_metres(const std::vector<double>& positions_m,
                                         double wavelength_m, std::vector<double> efficiencies) {
  if (!(wavelength_m > 0.0)) throw DomainError("wavelength must be positive");
  std::vector<double> pos;
  pos.reserve(positions_m.size());
  for (double p : positions_m) pos.push_back(p / wavelength_m);
  return ArrayGeometry(std::move(pos), std::move(efficiencies));
}

ArrayGeometry ArrayGeometry::isotropic(std::vector<double> positions_lambda) {
  std::vector<double> eta(positions_lambda.size(), 1.0);
  return ArrayGeometry(std::move(positions_lambda), std::move(eta));
}

ArrayGeometry ArrayGeometry::with_patterns(
    std::optional<std::vector<ElementPattern>> patterns) const {
  return ArrayGeometry(positions_, efficiencies_, std::move(patterns));
}

ArrayGeometry ula41() {
  std::vector<double> pos;
  for (int k = -20; k <= 20; ++k) pos.push_back(0.5 * k);
  return ArrayGeometry::isotropic(std::move(pos));
}

ArrayGeometry nonuniform41() {
  static constexpr double kPositive[] = {0.6215, 1.0414, 1.4743, 1.9572, 2.5043, 2.9870, 3.4492,
                                         4.0155, 4.4617, 4.9544, 5.3895, 5.8762, 6.3107, 6.8955,
                                         7.4536, 7.9957, 8.4196, 8.9315, 9.4274, 10.0000};
  std::vector<double> pos;
  for (auto it = std::rbegin(kPositive); it != std::rend(kPositive); ++it) pos.push_back(-*it);
  pos.push_back(0.0);
  for (double p : kPositive) pos.push_back(p);
  return ArrayGeometry::isotropic(std::move(pos));
}

ArrayGeometry parse_geometry(const std::string& csv_text) {
  const CsvTable table = parse_csv(csv_text, {"position_lambda", "efficiency"});
  std::vector<double> pos, eta;
  for (const auto& row : table.rows) {
    pos.push_back(row[0]);
    eta.push_back(row[1]);
  }
  try {
    return ArrayGeometry(std::move(pos), std::move(eta));
  } catch (const DomainError& e) {
    throw IngestionError(std::string("invalid geometry file: ") + e.what());
  }
}

ArrayGeometry load_geometry(const std::string& path) { return parse_geometry(read_text_file(path)); }

std::string geometry_csv(const ArrayGeometry& geometry) {
  std::string out = "position_lambda,efficiency\n";
  char buf[96];
  for (std::size_t n = 0; n < geometry.size(); ++n) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", geometry.positions()[n],
                  geometry.efficiencies()[n]);
    out += buf;
  }
  return out;
}

}  // namespace beamgain
