#pragma once

// Solvers for alpha_i(t), beta_i(t) under the sigma_1, sigma_2 and sigma_3
// intertwiners.
//
// sigma_3:
//   (a) d(beta)/dt + i d(alpha)/dt + i w b0 e^{-iwt} = 0
//   (b) 2 hO [ alpha (beta - b0 cos) - i b0 beta (cos + e^{-iwt}) + i beta^2
//              + (i b0 / 2)(b0 (1 + e^{-2iwt}) + b0 w (sin + cos)) ] = 0
// (a) integrates exactly: beta + i alpha - b(t) is constant, which turns (b)
// into a pointwise quadratic in beta.
//
// sigma_2:
//   (a) 2 hO (beta^2 - beta b0 e^{-iwt}) + i d(alpha)/dt - (i w b0 e^{-iwt} + d(beta)/dt) = 0
//   (b) -hO b0 i w (sin + cos) + hO alpha (2 beta - b0 e^{iwt}) - hO alpha b0 e^{-iwt} = 0
// (b) gives alpha = g(t, beta); substituting into (a) leaves an implicit ODE
// for beta.

#include <span>
#include <vector>

#include "dqed/darboux.hpp"
#include "dqed/hpm.hpp"
#include "dqed/jc_model.hpp"
#include "dqed/ode.hpp"

namespace dqed {

/// Singular-denominator threshold 1e-10 max(1, |b0|).
double singularity_tolerance(const PhysParams& p);

// --- sigma_3 ---------------------------------------------------------------

Complex sigma3_constraint(double t, Complex alpha, Complex beta, const PhysParams& p);
Complex sigma3_rate_residual(double t, Complex dalpha, Complex dbeta, const PhysParams& p);

/// alpha solving the algebraic constraint for a given beta.
/// Throws SingularDenominator when beta = b0 cos(wt).
Complex sigma3_alpha_from_beta(double t, Complex beta, const PhysParams& p);

/// Consistent initial state at t0 for the given beta.
RiccatiState sigma3_initial_state(const PhysParams& p, double t0, Complex beta0 = {});

/// The first grid point reproduces `ic` exactly; later points take the root
/// of the quadratic nearest the previous value (seeded by ic.beta).
/// Throws RootJump when neither root is within 0.5|b0| + 10 h |b0 w| of the
/// previous value, SingularDenominator when beta = b0 cos(wt).
DarbouxSolution solve_sigma3(const PhysParams& p, const RiccatiState& ic, std::span<const double> grid,
                             PotentialScale scale = PotentialScale::AsPrinted);

// --- sigma_2 ---------------------------------------------------------------

Complex sigma2_constraint(double t, Complex alpha, Complex beta, const PhysParams& p);
Complex sigma2_rate_residual(double t, Complex beta, Complex dalpha, Complex dbeta, const PhysParams& p);

/// g(t, beta) = i w b0 (sin + cos) / (2 beta - 2 b0 cos).
Complex sigma2_alpha(double t, Complex beta, const PhysParams& p);

struct Sigma2Rates {
    Complex dalpha;
    Complex dbeta;
};

/// Rates implied by the constraint and the rate equation at (t, beta).
/// Throws SingularDenominator or ImplicitSingularity.
Sigma2Rates sigma2_rates(double t, Complex beta, const PhysParams& p);

/// Integrates beta_2 with rk_oracle and recovers alpha_2 pointwise.
DarbouxSolution solve_sigma2(const PhysParams& p, Complex ic_beta, std::span<const double> grid,
                             const RkOptions& opts = {}, PotentialScale scale = PotentialScale::AsPrinted);

// --- sigma_1 ---------------------------------------------------------------

enum class Sigma1Source { ClosedForm, Resummed, Hpm };

struct Sigma1Options {
    Sigma1Source source = Sigma1Source::ClosedForm;
    std::size_t hpm_order = 3;
    std::size_t pade_m = 2;
    std::size_t pade_n = 2;
};

/// Samples the chosen sigma_1 representation on the grid. Derivatives are
/// analytic for the HPM and resummed forms and centered differences
/// (h = 1e-6 max(1, |t|)) for the closed form.
DarbouxSolution solve_sigma1(const PhysParams& p, std::span<const double> grid, const Sigma1Options& opts = {},
                             PotentialScale scale = PotentialScale::AsPrinted);

} // namespace dqed
