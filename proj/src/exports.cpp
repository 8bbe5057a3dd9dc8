#include "beamgain/exports.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "beamgain/csv.hpp"
#include "beamgain/errors.hpp"

namespace beamgain {

std::string pattern_csv(const SynthesisResult& result) {
  std::string out = "theta_deg,gain_dbi\n";
  char buf[96];
  for (std::size_t i = 0; i < result.pattern_angles_deg.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.6f,%.6f\n", result.pattern_angles_deg[i],
                  result.pattern_dbi(static_cast<Eigen::Index>(i)));
    out += buf;
  }
  return out;
}

std::string weights_csv(const SynthesisResult& result) {
  std::string out = "element,re_effective,im_effective,re_physical,im_physical\n";
  char buf[160];
  for (Eigen::Index n = 0; n < result.weights_effective.size(); ++n) {
    const cdouble e = result.weights_effective(n);
    const cdouble p = result.weights_physical(n);
    std::snprintf(buf, sizeof buf, "%ld,%.12g,%.12g,%.12g,%.12g\n", static_cast<long>(n), e.real(),
                  e.imag(), p.real(), p.imag());
    out += buf;
  }
  return out;
}

std::string summary_json(const SynthesisResult& result, const RunConfig& cfg,
                         const std::string& algorithm) {
  using nlohmann::json;
  const auto finite = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  json j;
  j["algorithm"] = algorithm;
  j["g0_dbi"] = result.g0_dbi;
  j["g0_state_dbi"] = result.g0_state_dbi;
  j["osll_db"] = finite(result.osll_db);
  j["ripple_db"] = result.ripple_db;
  j["iterations"] = result.iterations;
  j["converged"] = result.converged;
  j["residual_ml"] = finite(result.residual_ml);
  j["residual_sl"] = finite(result.residual_sl);
  j["elements"] = result.weights_effective.size();
  j["config"] = json::parse(run_config_json(cfg));
  return j.dump(2) + "\n";
}

void export_pattern(const SynthesisResult& result, const std::string& path) {
  write_file_atomic(path, pattern_csv(result));
}

void export_weights(const SynthesisResult& result, const std::string& path) {
  write_file_atomic(path, weights_csv(result));
}

void export_history(const SynthesisResult& result, const std::string& path) {
  write_file_atomic(path, history_csv(result.history));
}

void export_summary(const SynthesisResult& result, const RunConfig& cfg,
                    const std::string& algorithm, const std::string& path) {
  write_file_atomic(path, summary_json(result, cfg, algorithm));
}

}  // namespace beamgain
