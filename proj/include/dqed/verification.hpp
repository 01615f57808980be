#pragma once

// Residual and invariant checks run by `dqed verify` and by the acceptance
// test. Every check is deterministic (fixed seeds, no timings in the output),
// so the formatted report is reproducible byte for byte.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dqed {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// --- envelope oracle ---------------------------------------------------------

/// Half the peak-to-peak spread of w over samples with a <= t <= b.
double window_amplitude(std::span<const double> t, std::span<const double> w, double a, double b);

/// Sliding half peak-to-peak spread over |t' - t| <= half_width.
std::vector<double> sliding_envelope(std::span<const double> t, std::span<const double> w, double half_width);

struct RevivalInfo {
    bool collapsed = false;     // envelope dropped below the collapse level
    double collapse_time = 0.0; // first time it did so
    bool revived = false;       // a later excursion above the revival level exists
    double revival_time = 0.0;  // envelope maximum within that first excursion
    double revival_peak = 0.0;
};

/// Locates the first collapse (envelope < collapse_level) and the peak of the
/// first subsequent excursion with envelope >= revival_level.
RevivalInfo find_first_revival(std::span<const double> t, std::span<const double> env, double collapse_level,
                               double revival_level);

// --- individual checks ---------------------------------------------------------

CheckResult check_vacuum_rabi();
CheckResult check_normalization(std::uint64_t seed = 2024);
CheckResult check_collapse_revival();
CheckResult check_csqrt(std::size_t samples = 1'000'000, std::uint64_t seed = 7);
CheckResult check_pade_exactness(std::uint64_t seed = 11);
CheckResult check_resummation_fixed_point(std::uint64_t seed = 13);
CheckResult check_hpm_against_integrator();
CheckResult check_sigma3_invariants();
CheckResult check_sigma2_invariants();
CheckResult check_intertwining();
CheckResult check_switch_on_damping();

/// All of the above, in a fixed order.
std::vector<CheckResult> run_verification_suite();

/// Fixed-width pass/fail table, one line per check.
std::string format_report(std::span<const CheckResult> results);

} // namespace dqed
