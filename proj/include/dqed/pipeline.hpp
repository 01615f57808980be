#pragma once

// Simulation orchestration shared by the command-line tool and the tests.

#include <optional>
#include <string>
#include <vector>

#include "dqed/config.hpp"
#include "dqed/output.hpp"

namespace dqed {

struct RunResult {
    Series2D w;                // inversion trace
    std::optional<Series2D> v; // potential magnitude, Darboux runs only
    std::vector<std::string> files;
};

/// Photon-number cutoff for the configured coherent state.
int photon_cutoff(const SimConfig& cfg);

/// Standard inversion on the configured grid (no files written).
Series2D simulate_jc(const SimConfig& cfg);

/// Modified inversion and |V| for cfg.sigma in {1, 2, 3} (no files written).
/// For sigma 1 the drive and the potential trace are zero before t_on;
/// for sigma 2 the occupation is multiplied by sigma2_scale.
RunResult simulate_darboux(const SimConfig& cfg);

/// Validates, simulates and writes jc_W.{csv,svg} into cfg.out_dir.
RunResult run_jc(const SimConfig& cfg);

/// Validates, simulates and writes sigma<i>_W.{csv,svg} and
/// sigma<i>_V.{csv,svg} into cfg.out_dir.
RunResult run_darboux(const SimConfig& cfg);

} // namespace dqed
