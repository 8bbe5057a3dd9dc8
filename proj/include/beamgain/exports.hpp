#pragma once

#include <string>

#include "beamgain/run_config.hpp"
#include "beamgain/synthesis.hpp"

namespace beamgain {

/// `theta_deg,gain_dbi`, gains with 6 decimals.
std::string pattern_csv(const SynthesisResult& result);

/// `element,re_effective,im_effective,re_physical,im_physical`, 12 significant digits.
std::string weights_csv(const SynthesisResult& result);

/// Metrics, convergence state and the resolved config. Wall time is left
/// out so reruns are byte-identical.
std::string summary_json(const SynthesisResult& result, const RunConfig& cfg,
                         const std::string& algorithm);

/// Each writer goes through a temporary file and a rename. I/O failures
/// raise Error naming the path.
void export_pattern(const SynthesisResult& result, const std::string& path);
void export_weights(const SynthesisResult& result, const std::string& path);
void export_history(const SynthesisResult& result, const std::string& path);
void export_summary(const SynthesisResult& result, const RunConfig& cfg,
                    const std::string& algorithm, const std::string& path);

}  // namespace beamgain
