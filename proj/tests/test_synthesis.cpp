#include <doctest.h>

#include <cmath>
#include <algorithm>
#include <memory>

#include "beamgain/errors.hpp"
#include "beamgain/synthesis.hpp"

using namespace beamgain;

namespace {

SynthesisProblem small_problem(double bw, std::optional<double> dsll = {}) {
  std::vector<double> pos;
  for (int k = -6; k <= 6; ++k) pos.push_back(0.5 * k);
  SynthesisProblem p;
  p.geometry = std::make_shared<const ArrayGeometry>(ArrayGeometry::isotropic(pos));
  p.beamwidth_deg = bw;
  p.dsll_db = dsll;
  if (dsll) p.admm.rho_init = p.admm.rho2_init = 2000.0;
  return p;
}

}  // namespace

TEST_CASE("region assembly examples") {
  const Regions r = assemble_regions(0.0, 20.0, 3.0, 0.5);
  CHECK(r.mainlobe.size() == 41);
  CHECK(r.sidelobe.size() == 310);
  CHECK(r.sidelobe.front() == -90.0);
  CHECK(r.sidelobe.back() == 90.0);
  CHECK(r.sidelobe[154] == -13.0);
  CHECK(r.sidelobe[155] == 13.0);

  CHECK_THROWS_AS(assemble_regions(0.0, 180.5, 3.0, 0.5), DomainError);
  CHECK_THROWS_AS(assemble_regions(85.0, 20.0, 3.0, 0.5), DomainError);

  const Regions s = assemble_regions(40.0, 10.0, 3.0, 0.5);
  CHECK(s.mainlobe.front() == 35.0);
  CHECK(s.mainlobe.back() == 45.0);
  REQUIRE(s.sidelobe_intervals.size() == 2);
  CHECK(s.sidelobe_intervals[0].hi == 32.0);
  CHECK(s.sidelobe_intervals[1].lo == 48.0);
  const auto split = std::find(s.sidelobe.begin(), s.sidelobe.end(), 48.0);
  REQUIRE(split != s.sidelobe.end());
  CHECK(*(split - 1) == 32.0);
}

TEST_CASE("regions are disjoint with the guard respected") {
  for (double c = -60.0; c <= 60.0; c += 7.5) {
    for (double bw : {5.0, 20.0, 40.0}) {
      for (double guard : {0.0, 3.0, 4.25}) {
        if (std::abs(c) + bw / 2 > 90.0) continue;
        const Regions r = assemble_regions(c, bw, guard, 0.5);
        for (double s : r.sidelobe) {
          const double gap = std::max(r.mainlobe.front() - s, s - r.mainlobe.back());
          CHECK(gap >= guard - 1e-9);
          CHECK(s >= -90.0);
          CHECK(s <= 90.0);
        }
      }
    }
  }
}

TEST_CASE("metric examples") {
  const Regions r = assemble_regions(0.0, 20.0, 3.0, 0.5);
  const AngularGrid full = AngularGrid::visible(0.5);
  const RVector flat = RVector::Zero(static_cast<Eigen::Index>(full.size()));
  const PatternMetrics m = compute_metrics(full.angles(), flat, r);
  CHECK(m.ripple_db == 0.0);
  CHECK(m.osll_db == 0.0);

  RVector shaped = RVector::Constant(static_cast<Eigen::Index>(full.size()), -40.0);
  for (std::size_t i = 0; i < full.size(); ++i) {
    const double a = full.angles()[i];
    if (std::abs(a) <= 10.0) shaped(static_cast<Eigen::Index>(i)) = a == 0.0 ? 7.5 : 7.0;
    if (a == 50.0) shaped(static_cast<Eigen::Index>(i)) = -13.0;
  }
  const PatternMetrics s = compute_metrics(full.angles(), shaped, r);
  CHECK(s.g0_dbi == 7.0);
  CHECK(s.osll_db == doctest::Approx(-20.0));
  CHECK(s.ripple_db == doctest::Approx(0.5));

  const std::vector<double> outside{60.0, 70.0};
  CHECK_THROWS_AS(compute_metrics(outside, RVector::Zero(2), r), DomainError);
  const std::vector<double> inside{0.0, 5.0};
  CHECK_THROWS_AS(compute_metrics(inside, RVector::Zero(2), r), DomainError);
}

TEST_CASE("synthesize reports consistent metrics") {
  const SynthesisResult res = synthesize(small_problem(20.0, -20.0));
  CHECK(res.pattern_angles_deg.size() == 361);
  double ml_min = 1e9, sl_max = -1e9;
  for (std::size_t i = 0; i < res.pattern_angles_deg.size(); ++i) {
    const double a = res.pattern_angles_deg[i];
    const double g = res.pattern_dbi(static_cast<Eigen::Index>(i));
    if (std::abs(a) <= 10.0) ml_min = std::min(ml_min, g);
    if (std::abs(a) >= 13.0) sl_max = std::max(sl_max, g);
  }
  CHECK(std::abs(res.g0_dbi - ml_min) <= 1e-6);
  CHECK(std::abs(res.osll_db - (sl_max - ml_min)) <= 1e-9);
  CHECK(res.ripple_db >= 0.0);
  if (res.converged) {
    CHECK(std::abs(res.g0_state_dbi - res.g0_dbi) < 0.01);
    CHECK(res.osll_db <= -19.8);
  }
  // isotropic unit efficiencies: physical equals effective
  CHECK((res.weights_physical - res.weights_effective).norm() == 0.0);
}

TEST_CASE("physical weights divide out the efficiency") {
  SynthesisProblem p = small_problem(20.0);
  std::vector<double> pos = p.geometry->positions();
  std::vector<double> eta(pos.size());
  for (std::size_t n = 0; n < eta.size(); ++n) eta[n] = 0.5 + 0.5 * static_cast<double>(n) / eta.size();
  p.geometry = std::make_shared<const ArrayGeometry>(pos, eta);
  const SynthesisResult res = synthesize(p);
  for (std::size_t n = 0; n < eta.size(); ++n) {
    const auto i = static_cast<Eigen::Index>(n);
    CHECK(std::abs(res.weights_physical(i) * std::sqrt(eta[n]) - res.weights_effective(i)) <=
          1e-15 * std::abs(res.weights_effective(i)) + 1e-300);
  }
}

TEST_CASE("single element synthesis") {
  SynthesisProblem p;
  p.geometry = std::make_shared<const ArrayGeometry>(ArrayGeometry::isotropic({0.0}));
  p.beamwidth_deg = 0.0;
  const SynthesisResult res = synthesize(p);
  CHECK(res.converged);
  CHECK(res.iterations == 1);
  CHECK(res.pattern_dbi.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("problem validation") {
  SynthesisProblem p = small_problem(20.0);
  p.guard_deg = -1.0;
  CHECK_THROWS_AS(synthesize(p), DomainError);
  p = small_problem(20.0, 3.0);
  CHECK_THROWS_AS(synthesize(p), DomainError);
  p = small_problem(20.0);
  p.geometry.reset();
  CHECK_THROWS_AS(synthesize(p), ConfigError);
  p = small_problem(200.0);
  CHECK_THROWS_AS(synthesize(p), DomainError);
}

TEST_CASE("sweep rows follow center order and isolate failures") {
  SynthesisProblem p = small_problem(20.0, -20.0);
  const std::vector<double> centers{0.0, 85.0, 20.0};
  const auto rows = scan_sweep(p, centers, 2);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].center_deg == 0.0);
  CHECK(rows[1].center_deg == 85.0);
  CHECK(rows[2].center_deg == 20.0);
  CHECK(rows[0].result.has_value());
  CHECK_FALSE(rows[1].result.has_value());
  CHECK(!rows[1].error.empty());
  CHECK(rows[2].result.has_value());

  const SynthesisResult single = synthesize(p);
  CHECK(rows[0].result->g0_dbi == single.g0_dbi);
  CHECK((rows[0].result->weights_effective - single.weights_effective).norm() == 0.0);

  const std::string csv = sweep_csv(rows);
  CHECK(csv.rfind("theta_c_deg,g0_dbi,osll_db,ripple_db,iterations,converged,wall_ms\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  CHECK(csv.find("\n85,nan,nan,nan,0,0,") != std::string::npos);
}

TEST_CASE("center lists") {
  const auto c = parse_centers("0:40:5");
  REQUIRE(c.size() == 9);
  CHECK(c.front() == 0.0);
  CHECK(c.back() == 40.0);
  CHECK(parse_centers("12.5") == std::vector<double>{12.5});
  CHECK_THROWS_AS(parse_centers("0:40"), ConfigError);
  CHECK_THROWS_AS(parse_centers("0:40:0"), ConfigError);
  CHECK_THROWS_AS(parse_centers("a:b:c"), ConfigError);
  CHECK_THROWS_AS(parse_centers("10:0:5"), ConfigError);
}
