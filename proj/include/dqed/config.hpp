#pragma once

// Flat key=value configuration. Lines starting with '#' are comments.
// Later assignments (and command-line flags) override earlier ones.

#include <cstddef>
#include <string>
#include <string_view>

#include "dqed/darboux.hpp"
#include "dqed/jc_model.hpp"
#include "dqed/sigma_solvers.hpp"

namespace dqed {

struct SimConfig {
    // physics
    double coupling = 1.0;
    double omega = 1.0;
    double detuning = 2.0 * 1.4142135623730951;
    double hbar = 1.0;
    double b0 = 2.0;
    Complex gamma{5.477225575051661, 0.0}; // sqrt(30)

    // 0 selects the standard model
    int sigma = 0;

    double t0 = 0.0;
    double t1 = 100.0;
    std::size_t samples = 5000;

    std::size_t hpm_order = 3;
    std::size_t pade_m = 2;
    std::size_t pade_n = 2;
    Sigma1Source sigma1_source = Sigma1Source::ClosedForm;

    double poisson_tol = 1e-12;
    Complex ic_beta{};
    double t_on = 10.0;
    double sigma2_scale = 1.0;
    PotentialScale potential_scale = PotentialScale::AsPrinted;
    double rtol = 1e-10;
    double atol = 1e-12;

    std::string out_dir = "out";
    bool csv = true;
    bool svg = true;
    bool logy = false;

    PhysParams params() const;
};

/// Applies one key=value pair. Throws ConfigError naming the key.
void apply_setting(SimConfig& cfg, std::string_view key, std::string_view value);

/// Parses key=value text on top of `base`.
SimConfig parse_config(std::string_view text, SimConfig base = {});
SimConfig load_config(const std::string& path, SimConfig base = {});

/// Throws ConfigError for the first invalid field.
void validate(const SimConfig& cfg);

} // namespace dqed
