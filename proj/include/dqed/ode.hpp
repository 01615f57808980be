#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "dqed/complex_math.hpp"

namespace dqed {

using OdeState = std::vector<Complex>;
using OdeRhs = std::function<void(double t, std::span<const Complex> y, std::span<Complex> dydt)>;

struct RkOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    /// When positive, disables step-size control and uses this step.
    double fixed_step = 0.0;
    std::size_t max_steps = 100'000'000;
};

struct RkResult {
    std::vector<double> t;
    std::vector<OdeState> y;
    std::size_t accepted = 0;
    std::size_t rejected = 0;
};

/// Dormand-Prince 5(4) with step-size control and 4th-order dense output.
/// `grid` must be strictly increasing; its first entry is the time of `ic`.
/// The step sequence does not depend on the interior grid points.
/// Throws StepUnderflow when the step falls below 1e-14 of the span.
RkResult rk_oracle(const OdeRhs& rhs, const OdeState& ic, std::span<const double> grid, const RkOptions& opts = {});

} // namespace dqed
