#include "beamgain/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include <json.hpp>

#include "beamgain/errors.hpp"
#include "beamgain/sphere_lsq.hpp"
#include "beamgain/subproblems.hpp"

namespace beamgain::oracle {

namespace {

using json = nlohmann::json;

// Independent evaluation of the auxiliary-block cost for a fixed g0.
double block_cost(const std::vector<double>& m1, const std::vector<double>& m2, double rho1,
                  double rho2, double root_gamma, double g0) {
  double cost = -g0;
  for (double a : m1) {
    if (a < g0) cost += (g0 - a) * (g0 - a) / (2.0 * rho1);
  }
  for (double a : m2) {
    const double cap = root_gamma * g0;
    if (a > cap) cost += (a - cap) * (a - cap) / (2.0 * rho2);
  }
  return cost;
}

std::vector<double> moduli(const CVector& v) {
  std::vector<double> out(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out[static_cast<std::size_t>(i)] = std::abs(v(i));
  return out;
}

json complex_json(const CVector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back({v(i).real(), v(i).imag()});
  return arr;
}

json real_json(const RVector& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

json matrix_json(const RMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(real_json(m.row(r).transpose()));
  return rows;
}

CVector random_complex(std::mt19937_64& rng, Eigen::Index n, double scale) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = scale * cdouble(normal(rng), normal(rng));
  return v;
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

}  // namespace

std::string to_json_line(const OracleReport& r) {
  json j;
  j["suite"] = r.suite;
  j["case"] = r.case_index;
  j["oracle_cost"] = r.oracle_cost;
  j["engine_cost"] = r.engine_cost;
  j["gap"] = r.gap;
  j["samples_or_gridstep"] = r.samples_or_gridstep;
  j["passed"] = r.passed;
  j["inputs"] = r.inputs_json.empty() ? json(nullptr) : json::parse(r.inputs_json);
  return j.dump();
}

GridResult oracle_g0_grid(const CVector& z1, const CVector& z2, double rho1, double rho2,
                          double gamma, double g0_max, double step) {
  if (z1.size() == 0) throw DomainError("grid oracle: empty mainlobe vector");
  if (!(step > 0.0) || !(g0_max > 0.0)) throw DomainError("grid oracle: bad grid");
  if (step > 1e-3 * g0_max) throw DomainError("grid oracle: step must be <= 1e-3 g0_max");
  const auto m1 = moduli(z1);
  const auto m2 = moduli(z2);
  const double rg = std::sqrt(gamma);
  double largest = *std::max_element(m1.begin(), m1.end());
  for (double a : m2) largest = std::max(largest, a / rg);

  GridResult out;
  out.g0_max = g0_max;
  const double needed = largest + rho1 / static_cast<double>(m1.size());
  if (g0_max < needed) {
    out.g0_max = needed;
    out.widened = true;
  }
  const auto cost = [&](double g0) { return block_cost(m1, m2, rho1, rho2, rg, g0); };
  double best = std::numeric_limits<double>::infinity();
  double best_g0 = step;
  const auto points = static_cast<long>(std::ceil(out.g0_max / step));
  for (long k = 1; k <= points; ++k) {
    const double g0 = static_cast<double>(k) * step;
    const double c = cost(g0);
    if (c < best) {
      best = c;
      best_g0 = g0;
    }
  }
  // the cost is convex in g0; ternary search around the best grid point
  double lo = std::max(0.0, best_g0 - step);
  double hi = best_g0 + step;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
    const double a = lo + (hi - lo) / 3.0;
    const double b = hi - (hi - lo) / 3.0;
    if (cost(a) <= cost(b)) {
      hi = b;
    } else {
      lo = a;
    }
  }
  const double refined = 0.5 * (lo + hi);
  if (refined > 0.0 && cost(refined) <= best) {
    best = cost(refined);
    best_g0 = refined;
  }
  out.g0 = best_g0;
  out.cost = best;
  return out;
}

SphereResult oracle_sphere(const RMatrix& M, const RVector& d, int restarts, std::uint64_t seed) {
  if (M.cols() != d.size()) throw DimensionError("sphere oracle: M and d disagree");
  const Eigen::Index n = M.rows();
  const RMatrix G = M * M.transpose();
  const RVector b = M * d;
  const double dd = d.squaredNorm();
  const double lmax = std::max(G.diagonal().sum(), 1e-300);  // trace bounds the top eigenvalue
  const double eta = 0.5 / lmax;
  const auto cost = [&](const RVector& x) { return x.dot(G * x) - 2.0 * x.dot(b) + dd; };

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  SphereResult best;
  best.cost = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    RVector x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = normal(rng);
    x /= x.norm();
    for (int it = 0; it < 200000; ++it) {
      RVector next = x - eta * 2.0 * (G * x - b);
      const double nn = next.norm();
      if (nn == 0.0) break;
      next /= nn;
      const double moved = (next - x).norm();
      x = std::move(next);
      if (moved < 1e-10) break;
    }
    const double c = cost(x);
    if (c < best.cost) {
      best.cost = c;
      best.x = x;
    }
  }
  return best;
}

std::vector<double> oracle_secular_scan(const RVector& lambdas, const RVector& beta, double step) {
  if (lambdas.size() != beta.size() || lambdas.size() == 0) {
    throw DimensionError("secular scan: lambda and beta disagree");
  }
  const double spread = std::sqrt(static_cast<double>(lambdas.size())) * beta.cwiseAbs().maxCoeff();
  const double lo = lambdas.minCoeff() - spread - 1.0;
  const double hi = lambdas.maxCoeff() + spread + 1.0;
  if (step <= 0.0) step = 1e-5 * (hi - lo);
  const auto f = [&](double nu) {
    double s = 0.0;
    for (Eigen::Index n = 0; n < lambdas.size(); ++n) {
      const double t = beta(n) / (nu - lambdas(n));
      s += t * t;
    }
    return s - 1.0;
  };
  std::vector<double> roots;
  double prev_nu = lo;
  double prev = f(lo);
  const auto count = static_cast<long>(std::ceil((hi - lo) / step));
  for (long k = 1; k <= count; ++k) {
    const double nu = std::min(hi, lo + static_cast<double>(k) * step);
    const double cur = f(nu);
    if (std::isfinite(prev) && std::isfinite(cur) && ((prev < 0.0) != (cur < 0.0))) {
      double a = prev_nu, b = nu, fa = prev;
      for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = f(mid);
        if ((fm < 0.0) == (fa < 0.0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    prev_nu = nu;
    prev = cur;
  }
  return roots;
}

SuiteSummary subproblem_suite(std::size_t cases, std::uint64_t seed, double tol) {
  SuiteSummary s;
  s.name = "subproblem";
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> len(1, 12);
  std::uniform_int_distribution<int> len_sl(1, 12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  s.worst_gap = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < 2 * cases; ++c) {
    const bool with_sl = c >= cases;
    const double scale = log_uniform(rng, 0.01, 100.0);
    CVector z1 = random_complex(rng, len(rng), scale);
    CVector z2 = with_sl ? random_complex(rng, len_sl(rng), scale) : CVector();
    if (unit(rng) < 0.1) z1(0) = 0.0;  // exercise the arg(0) convention
    const double rho1 = log_uniform(rng, 0.1, 1000.0);
    const double rho2 = with_sl ? log_uniform(rng, 0.1, 1000.0) : 1.0;
    const double gamma = with_sl ? log_uniform(rng, 1e-4, 1.0) : 1.0;

    const GainSplit engine =
        with_sl ? update_gh_wsc(z1, z2, rho1, rho2, gamma) : update_g_wosc(z1, rho1);
    double top = z1.cwiseAbs().maxCoeff();
    if (with_sl) top = std::max(top, z2.cwiseAbs().maxCoeff() / std::sqrt(gamma));
    const double g0_max = top + rho1 / static_cast<double>(z1.size()) + 1e-9;
    const double step = 1e-4 * g0_max;
    const GridResult grid = oracle_g0_grid(z1, z2, rho1, rho2, gamma, g0_max, step);

    OracleReport r;
    r.suite = with_sl ? "update_gh_wsc" : "update_g_wosc";
    r.case_index = c;
    r.engine_cost = engine.cost;
    r.oracle_cost = grid.cost;
    r.gap = engine.cost - grid.cost;
    r.samples_or_gridstep = "step=" + std::to_string(step);
    r.passed = r.gap <= tol && std::isfinite(engine.cost);
    s.worst_gap = std::max(s.worst_gap, r.gap);
    ++s.cases;
    if (!r.passed) {
      json in;
      in["z1"] = complex_json(z1);
      in["z2"] = complex_json(z2);
      in["rho1"] = rho1;
      in["rho2"] = rho2;
      in["gamma"] = gamma;
      r.inputs_json = in.dump();
      ++s.failures;
      s.reports.push_back(std::move(r));
    }
  }
  return s;
}

SuiteSummary sphere_suite(std::size_t cases, std::uint64_t seed, int restarts, double tol) {
  SuiteSummary s;
  s.name = "sphere";
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> half_dim(1, 6);
  std::uniform_int_distribution<int> cols(1, 12);
  std::normal_distribution<double> normal(0.0, 1.0);
  s.worst_gap = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < cases; ++c) {
    RMatrix M;
    RVector d;
    const int n = half_dim(rng);
    if (c % 2 == 0) {
      // generic real problem
      M = RMatrix::NullaryExpr(2 * n, cols(rng), [&] { return normal(rng); });
      d = RVector::NullaryExpr(M.cols(), [&] { return 3.0 * normal(rng); });
    } else {
      // realified complex operator, often rank deficient (L < N)
      const int l = std::uniform_int_distribution<int>(1, 6)(rng);
      CMatrix P(n, l);
      for (Eigen::Index i = 0; i < P.size(); ++i) P(i) = cdouble(normal(rng), normal(rng));
      const CVector dc = random_complex(rng, l, 3.0);
      Realified re = realify(P, dc);
      M = std::move(re.M);
      d = std::move(re.d);
    }
    const RVector x = solve_sphere_lsq(M, d);
    const double engine = sphere_lsq_cost(M, d, x);
    const SphereResult best = oracle_sphere(M, d, restarts, seed ^ (0x9e3779b97f4a7c15ULL * (c + 1)));

    OracleReport r;
    r.suite = "solve_sphere_lsq";
    r.case_index = c;
    r.engine_cost = engine;
    r.oracle_cost = best.cost;
    r.gap = engine - best.cost;
    r.samples_or_gridstep = "restarts=" + std::to_string(restarts);
    r.passed = r.gap <= tol && std::abs(x.norm() - 1.0) <= 1e-9;
    s.worst_gap = std::max(s.worst_gap, r.gap);
    ++s.cases;
    if (!r.passed) {
      json in;
      in["M"] = matrix_json(M);
      in["d"] = real_json(d);
      r.inputs_json = in.dump();
      ++s.failures;
      s.reports.push_back(std::move(r));
    }
  }
  return s;
}

SuiteSummary secular_suite(std::size_t cases, std::uint64_t seed) {
  SuiteSummary s;
  s.name = "secular";
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim(1, 12);
  std::uniform_real_distribution<double> lam(0.0, 10.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  s.worst_gap = 0.0;
  for (std::size_t c = 0; c < cases; ++c) {
    const int m = dim(rng);
    RVector lambdas(m), beta(m);
    for (int i = 0; i < m; ++i) {
      lambdas(i) = lam(rng);
      beta(i) = normal(rng) * log_uniform(rng, 0.05, 5.0);
    }
    std::sort(lambdas.data(), lambdas.data() + m);
    SecularSystem sys{lambdas, RMatrix::Identity(m, m), beta};
    const double nu = secular_bisect(sys, 1e-12);
    const double resid = std::abs(secular_residual(lambdas, beta, nu));
    const auto [lo, hi] = secular_bracket(lambdas, beta);
    const bool in_bracket = nu >= lo - 1e-12 * (1.0 + std::abs(lo)) &&
                            nu <= hi + 1e-12 * (1.0 + std::abs(hi));
    const double own = secular_root_cost(lambdas, beta, nu);
    double worst = 0.0;
    for (double root : oracle_secular_scan(lambdas, beta)) {
      const double other = secular_root_cost(lambdas, beta, root);
      worst = std::max(worst, own - other);
    }
    const double allowance = 1e-9 * (1.0 + std::abs(own));
    OracleReport r;
    r.suite = "secular_bisect";
    r.case_index = c;
    r.engine_cost = own;
    r.oracle_cost = own - worst;
    r.gap = worst;
    r.samples_or_gridstep = "scan step=1e-5 range";
    r.passed = resid <= 1e-10 && in_bracket && worst <= allowance;
    s.worst_gap = std::max(s.worst_gap, worst);
    ++s.cases;
    if (!r.passed) {
      json in;
      in["lambdas"] = real_json(lambdas);
      in["beta"] = real_json(beta);
      in["nu"] = nu;
      in["residual"] = resid;
      in["in_bracket"] = in_bracket;
      r.inputs_json = in.dump();
      ++s.failures;
      s.reports.push_back(std::move(r));
    }
  }
  return s;
}

}  // namespace beamgain::oracle
