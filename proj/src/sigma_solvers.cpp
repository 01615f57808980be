#include "dqed/sigma_solvers.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dqed/errors.hpp"

namespace dqed {

namespace {

struct Trig {
    double c, s;
    Complex em; // e^{-iwt}
};

Trig trig(double t, const PhysParams& p)
{
    const double wt = p.field_freq * t;
    return {std::cos(wt), std::sin(wt), std::exp(-I * wt)};
}

// Quadratic 2 beta^2 + bq beta + cq = 0 obtained by eliminating alpha with
// beta + i alpha = K(t).
struct Sigma3Quadratic {
    Complex k, bq, cq;
    Complex dk, dbq, dcq;
};

Sigma3Quadratic sigma3_quadratic(double t, Complex offset, const PhysParams& p)
{
    const auto [c, s, e] = trig(t, p);
    const double b0 = p.b0;
    const double w = p.field_freq;
    const Complex e2 = e * e;

    Sigma3Quadratic q;
    q.k = offset + b0 * e;
    q.dk = -I * w * b0 * e;
    const Complex d = 0.5 * b0 * b0 * (1.0 + e2 + w * (s + c));
    const Complex dd = 0.5 * b0 * b0 * (-2.0 * I * w * e2 + w * w * (c - s));
    q.bq = -(q.k + 2.0 * b0 * c + b0 * e);
    q.dbq = -(q.dk - 2.0 * b0 * w * s - I * w * b0 * e);
    q.cq = q.k * b0 * c + d;
    q.dcq = q.dk * b0 * c - q.k * b0 * w * s + dd;
    return q;
}

std::pair<Complex, Complex> quadratic_roots(Complex a, Complex b, Complex c)
{
    const Complex sq = csqrt(b * b - 4.0 * a * c);
    // Pick the sign that avoids cancellation.
    const Complex qq = (std::real(std::conj(b) * sq) >= 0.0) ? -0.5 * (b + sq) : -0.5 * (b - sq);
    if (qq == Complex{}) return {Complex{}, Complex{}};
    return {qq / a, c / qq};
}

std::vector<Complex> centered_difference(std::span<const double> grid, auto&& f)
{
    std::vector<Complex> d(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double h = 1e-6 * std::max(1.0, std::abs(grid[k]));
        d[k] = (f(grid[k] + h) - f(grid[k] - h)) / (2.0 * h);
    }
    return d;
}

} // namespace

double singularity_tolerance(const PhysParams& p)
{
    return 1e-10 * std::max(1.0, std::abs(p.b0));
}

// ---------------------------------------------------------------------------
// sigma_3

Complex sigma3_constraint(double t, Complex alpha, Complex beta, const PhysParams& p)
{
    const auto [c, s, e] = trig(t, p);
    const double b0 = p.b0;
    const double w = p.field_freq;
    return 2.0 * p.hbar_coupling() *
           (alpha * (beta - b0 * c) - I * b0 * beta * (c + e) + I * beta * beta +
            0.5 * I * b0 * (b0 * (1.0 + e * e) + b0 * w * (s + c)));
}

Complex sigma3_rate_residual(double t, Complex dalpha, Complex dbeta, const PhysParams& p)
{
    return dbeta + I * dalpha + I * p.field_freq * p.b0 * std::exp(-I * (p.field_freq * t));
}

Complex sigma3_alpha_from_beta(double t, Complex beta, const PhysParams& p)
{
    const auto [c, s, e] = trig(t, p);
    const double b0 = p.b0;
    const double w = p.field_freq;
    const Complex den = beta - b0 * c;
    if (std::abs(den) < singularity_tolerance(p)) {
        throw SingularDenominator("sigma-3: beta coincides with b0 cos(wt)", t);
    }
    const Complex rest =
        -I * b0 * beta * (c + e) + I * beta * beta + 0.5 * I * b0 * (b0 * (1.0 + e * e) + b0 * w * (s + c));
    return -rest / den;
}

RiccatiState sigma3_initial_state(const PhysParams& p, double t0, Complex beta0)
{
    return {sigma3_alpha_from_beta(t0, beta0, p), beta0};
}

DarbouxSolution solve_sigma3(const PhysParams& p, const RiccatiState& ic, std::span<const double> grid,
                             PotentialScale scale)
{
    if (grid.empty()) throw std::invalid_argument("solve_sigma3: empty grid");
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (!(grid[k] > grid[k - 1])) throw std::invalid_argument("solve_sigma3: grid not strictly increasing");
    }
    const std::size_t n = grid.size();
    const double tol = singularity_tolerance(p);
    const double b0 = p.b0;
    // beta + i alpha - b(t) is conserved.
    const Complex offset = ic.beta + I * ic.alpha - classical_field(grid[0], p);

    std::vector<Complex> alpha(n), beta(n), dalpha(n), dbeta(n);
    Complex prev = ic.beta;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = grid[k];
        const auto q = sigma3_quadratic(t, offset, p);
        Complex b;
        if (k == 0) {
            b = ic.beta;
        } else {
            const auto [r1, r2] = quadratic_roots(Complex{2.0, 0.0}, q.bq, q.cq);
            const double d1 = std::abs(r1 - prev);
            const double d2 = std::abs(r2 - prev);
            const double h = t - grid[k - 1];
            const double limit = 0.5 * std::abs(b0) + 10.0 * h * std::abs(b0 * p.field_freq);
            if (std::min(d1, d2) > limit) throw RootJump("sigma-3: both quadratic roots left the continuity band", t);
            b = d1 <= d2 ? r1 : r2;
        }
        if (std::abs(b - b0 * std::cos(p.field_freq * t)) < tol) {
            throw SingularDenominator("sigma-3: beta coincides with b0 cos(wt)", t);
        }
        const Complex qb = 4.0 * b + q.bq;
        if (std::abs(qb) < tol) throw RootJump("sigma-3: quadratic roots collide", t);
        const Complex db = -(q.dbq * b + q.dcq) / qb;

        beta[k] = b;
        alpha[k] = k == 0 ? ic.alpha : -I * (q.k - b);
        dbeta[k] = db;
        dalpha[k] = -I * (q.dk - db);
        prev = b;
    }
    return DarbouxSolution(Sigma::Three, std::vector<double>(grid.begin(), grid.end()), std::move(alpha),
                           std::move(beta), std::move(dalpha), std::move(dbeta), p, scale);
}

// ---------------------------------------------------------------------------
// sigma_2

Complex sigma2_constraint(double t, Complex alpha, Complex beta, const PhysParams& p)
{
    const auto [c, s, e] = trig(t, p);
    const double h = p.hbar_coupling();
    const double b0 = p.b0;
    const Complex ep = std::conj(e);
    return -h * b0 * (I * p.field_freq) * (s + c) + h * alpha * (2.0 * beta - b0 * ep) - h * alpha * b0 * e;
}

Complex sigma2_rate_residual(double t, Complex beta, Complex dalpha, Complex dbeta, const PhysParams& p)
{
    const Complex e = std::exp(-I * (p.field_freq * t));
    const double b0 = p.b0;
    return 2.0 * p.hbar_coupling() * (beta * beta - beta * b0 * e) + I * dalpha - (I * p.field_freq * b0 * e + dbeta);
}

Complex sigma2_alpha(double t, Complex beta, const PhysParams& p)
{
    const auto [c, s, e] = trig(t, p);
    const Complex den = 2.0 * (beta - p.b0 * c);
    if (std::abs(den) < 2.0 * singularity_tolerance(p)) {
        throw SingularDenominator("sigma-2: beta coincides with b0 cos(wt)", t);
    }
    return I * p.field_freq * p.b0 * (s + c) / den;
}

Sigma2Rates sigma2_rates(double t, Complex beta, const PhysParams& p)
{
    const auto [c, s, e] = trig(t, p);
    const double b0 = p.b0;
    const double w = p.field_freq;
    const double tol = singularity_tolerance(p);

    const Complex num = I * w * b0 * (s + c);
    const Complex den = 2.0 * (beta - b0 * c);
    if (std::abs(den) < 2.0 * tol) throw SingularDenominator("sigma-2: beta coincides with b0 cos(wt)", t);
    const Complex dnum = I * w * b0 * w * (c - s);
    const Complex dden = 2.0 * b0 * w * s;
    const Complex den2 = den * den;
    const Complex g_t = (dnum * den - num * dden) / den2;
    const Complex g_beta = -2.0 * num / den2;

    const Complex lead = I * g_beta - 1.0;
    if (std::abs(lead) < tol) throw ImplicitSingularity("sigma-2: implicit rate coefficient vanishes", t);
    const Complex rhs = I * w * b0 * e - 2.0 * p.hbar_coupling() * (beta * beta - beta * b0 * e) - I * g_t;
    const Complex db = rhs / lead;
    return {g_t + g_beta * db, db};
}

DarbouxSolution solve_sigma2(const PhysParams& p, Complex ic_beta, std::span<const double> grid, const RkOptions& opts,
                             PotentialScale scale)
{
    const OdeRhs rhs = [&p](double t, std::span<const Complex> y, std::span<Complex> dy) {
        dy[0] = sigma2_rates(t, y[0], p).dbeta;
    };
    const auto traj = rk_oracle(rhs, OdeState{ic_beta}, grid, opts);

    const std::size_t n = grid.size();
    std::vector<Complex> alpha(n), beta(n), dalpha(n), dbeta(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = grid[k];
        beta[k] = traj.y[k][0];
        alpha[k] = sigma2_alpha(t, beta[k], p);
        const auto r = sigma2_rates(t, beta[k], p);
        dalpha[k] = r.dalpha;
        dbeta[k] = r.dbeta;
    }
    return DarbouxSolution(Sigma::Two, std::vector<double>(grid.begin(), grid.end()), std::move(alpha),
                           std::move(beta), std::move(dalpha), std::move(dbeta), p, scale);
}

// ---------------------------------------------------------------------------
// sigma_1

DarbouxSolution solve_sigma1(const PhysParams& p, std::span<const double> grid, const Sigma1Options& opts,
                             PotentialScale scale)
{
    const std::size_t n = grid.size();
    std::vector<Complex> alpha(n), beta(n), dalpha(n), dbeta(n);

    switch (opts.source) {
    case Sigma1Source::ClosedForm: {
        for (std::size_t k = 0; k < n; ++k) {
            const auto s = closed_form_sigma1(grid[k], p);
            alpha[k] = s.alpha;
            beta[k] = s.beta;
        }
        dalpha = centered_difference(grid, [&](double t) { return closed_form_sigma1(t, p).alpha; });
        dbeta = centered_difference(grid, [&](double t) { return closed_form_sigma1(t, p).beta; });
        break;
    }
    case Sigma1Source::Hpm: {
        const auto h = hpm_solve_sigma1(p, opts.hpm_order);
        HarmonicSeries a(p.field_freq), b(p.field_freq);
        for (std::size_t k = 0; k <= h.order; ++k) {
            a += h.alpha_exact[k];
            b += h.beta_exact[k];
        }
        const auto da = a.derivative();
        const auto db = b.derivative();
        for (std::size_t k = 0; k < n; ++k) {
            alpha[k] = a.evaluate(grid[k]);
            beta[k] = b.evaluate(grid[k]);
            dalpha[k] = da.evaluate(grid[k]);
            dbeta[k] = db.evaluate(grid[k]);
        }
        break;
    }
    case Sigma1Source::Resummed: {
        const std::size_t order = std::max(opts.hpm_order, opts.pade_m + opts.pade_n - 1);
        const auto h = hpm_solve_sigma1(p, opts.hpm_order, order);
        const auto r = resum_sigma1(h, opts.pade_m, opts.pade_n);
        for (std::size_t k = 0; k < n; ++k) {
            alpha[k] = r.alpha.evaluate(grid[k]);
            beta[k] = r.beta.evaluate(grid[k]);
            dalpha[k] = r.alpha.derivative(grid[k]);
            dbeta[k] = r.beta.derivative(grid[k]);
        }
        break;
    }
    }
    return DarbouxSolution(Sigma::One, std::vector<double>(grid.begin(), grid.end()), std::move(alpha),
                           std::move(beta), std::move(dalpha), std::move(dbeta), p, scale);
}

} // namespace dqed
