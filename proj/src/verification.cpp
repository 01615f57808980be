#include "dqed/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <numbers>
#include <random>
#include <stdexcept>

#include "dqed/complex_math.hpp"
#include "dqed/darboux.hpp"
#include "dqed/errors.hpp"
#include "dqed/hpm.hpp"
#include "dqed/inversion.hpp"
#include "dqed/jc_model.hpp"
#include "dqed/kernels.hpp"
#include "dqed/ode.hpp"
#include "dqed/series.hpp"
#include "dqed/sigma_solvers.hpp"

namespace dqed {

namespace {

std::string sci(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

std::string fix(double x, int digits = 3)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

CheckResult failed_with(std::string name, const std::exception& e)
{
    return {std::move(name), false, std::string("threw: ") + e.what()};
}

// Uniform complex number with components in [-r, r].
Complex random_complex(std::mt19937_64& rng, double r)
{
    std::uniform_real_distribution<double> u(-r, r);
    const double re = u(rng);
    return {re, u(rng)};
}

std::vector<Complex> random_poly(std::mt19937_64& rng, std::size_t degree, bool monic_constant)
{
    std::vector<Complex> c(degree + 1);
    for (auto& x : c) x = random_complex(rng, 1.0);
    if (monic_constant) c[0] = 1.0;
    // keep the leading coefficient away from zero so the degree is exact
    if (degree > 0 && std::abs(c[degree]) < 0.2) c[degree] += Complex{0.5, 0.0};
    return c;
}

} // namespace

// ---------------------------------------------------------------------------
// envelope oracle

double window_amplitude(std::span<const double> t, std::span<const double> w, double a, double b)
{
    if (t.size() != w.size()) throw std::invalid_argument("window_amplitude: size mismatch");
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (t[k] < a || t[k] > b) continue;
        lo = std::min(lo, w[k]);
        hi = std::max(hi, w[k]);
    }
    if (!(hi >= lo)) throw std::invalid_argument("window_amplitude: no samples in window");
    return 0.5 * (hi - lo);
}

std::vector<double> sliding_envelope(std::span<const double> t, std::span<const double> w, double half_width)
{
    if (t.size() != w.size()) throw std::invalid_argument("sliding_envelope: size mismatch");
    const std::size_t n = t.size();
    std::vector<double> env(n);
    std::deque<std::size_t> mx, mn; // indices with monotone values
    std::size_t lo = 0, hi = 0;     // window is [lo, hi)
    for (std::size_t k = 0; k < n; ++k) {
        while (hi < n && t[hi] <= t[k] + half_width) {
            while (!mx.empty() && w[mx.back()] <= w[hi]) mx.pop_back();
            mx.push_back(hi);
            while (!mn.empty() && w[mn.back()] >= w[hi]) mn.pop_back();
            mn.push_back(hi);
            ++hi;
        }
        while (t[lo] < t[k] - half_width) ++lo;
        while (mx.front() < lo) mx.pop_front();
        while (mn.front() < lo) mn.pop_front();
        env[k] = 0.5 * (w[mx.front()] - w[mn.front()]);
    }
    return env;
}

RevivalInfo find_first_revival(std::span<const double> t, std::span<const double> env, double collapse_level,
                               double revival_level)
{
    if (t.size() != env.size()) throw std::invalid_argument("find_first_revival: size mismatch");
    RevivalInfo info;
    std::size_t k = 0;
    while (k < env.size() && env[k] >= collapse_level) ++k;
    if (k == env.size()) return info;
    info.collapsed = true;
    info.collapse_time = t[k];
    while (k < env.size() && env[k] < revival_level) ++k;
    if (k == env.size()) return info;
    info.revived = true;
    info.revival_peak = env[k];
    info.revival_time = t[k];
    for (; k < env.size() && env[k] >= revival_level; ++k) {
        if (env[k] > info.revival_peak) {
            info.revival_peak = env[k];
            info.revival_time = t[k];
        }
    }
    return info;
}

// ---------------------------------------------------------------------------
// checks

CheckResult check_vacuum_rabi()
{
    const std::string name = "vacuum Rabi oscillation";
    try {
        const auto p = PhysParams::with_detuning(1.0, 1.0, 0.0, 1.0, 2.0, Complex{});
        const auto t = make_grid(0.0, 10.0, 10'000);
        const auto w = parallel::standard_inversion(t, p, poisson_truncation(0.0));
        double err = 0.0;
        for (std::size_t k = 0; k < t.size(); ++k) err = std::max(err, std::abs(w[k] - std::cos(2.0 * t[k])));
        return {name, err <= 1e-9, "max |W - cos 2t| = " + sci(err) + " (limit 1e-9)"};
    } catch (const std::exception& e) {
        return failed_with(name, e);
    }
}

CheckResult check_normalization(std::uint64_t seed)
{
    const std::string name = "W(0) normalization";
    try {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> coupling(0.2, 3.0), detuning(-5.0, 5.0), nbar(0.0, 60.0),
            nbb(0.0, 1e4);
        double err_std = 0.0, err_mod = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double om = coupling(rng);
            const double dt = detuning(rng);
            const double nb = nbar(rng);
            const double occ = nbb(rng);
            const auto p = PhysParams::with_detuning(om, 1.0, dt, 1.0, 2.0, Complex{std::sqrt(nb), 0.0});
            const int n_max = poisson_truncation(nb, 1e-14);
            err_std = std::max(err_std, std::abs(atomic_inversion(0.0, p, n_max) - 1.0));
            err_mod = std::max(err_mod, std::abs(modified_inversion(0.0, occ, p, n_max) - 1.0));
        }
        const bool ok = err_std <= 1e-12 && err_mod <= 1e-12;
        return {name, ok, "max |W(0)-1| standard " + sci(err_std) + ", modified " + sci(err_mod) + " (limit 1e-12)"};
    } catch (const std::exception& e) {
        return failed_with(name, e);
    }
}

CheckResult check_collapse_revival()
{
    const std::string name = "collapse and first revival";
    try {
        const auto p = default_params();
        const auto t = make_grid(0.0, 100.0, 20'001);
        const auto w = parallel::standard_inversion(t, p, poisson_truncation(p.mean_photons()));
        const auto env = sliding_envelope(t, w, 1.0);
        bool collapsed = false;
        for (std::size_t k = 0; k < t.size(); ++k)
            if (t[k] >= 10.0 && t[k] <= 60.0 && env[k] < 0.05) collapsed = true;
        const auto rev = find_first_revival(t, env, 0.05, 0.1);
        const double k2 = p.kappa() * p.kappa();
        const double target = 4.0 * std::numbers::pi * std::sqrt(k2 + p.mean_photons() + 1.0);
        const bool timed = rev.revived && std::abs(rev.revival_time - target) <= 0.1 * target;
        std::string detail = std::string("collapse in [10,60]: ") + (collapsed ? "yes" : "no") + "; first revival peak ";
        detail += rev.revived ? "at t = " + fix(rev.revival_time, 2) : std::string("not found");
        detail += ", target " + fix(target, 2) + " +/- 10%";
        return {name, collapsed && timed, detail};
    } catch (const std::exception& e) {
        return failed_with(name, e);
    }
}

CheckResult check_csqrt(std::size_t samples, std::uint64_t seed)
{
    const std::string name = "complex square root";
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> mag(-6.0, 6.0), angle(-std::numbers::pi, std::numbers::pi);
    double worst = 0.0;
    std::size_t negative_re = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        const Complex z = std::polar(std::pow(10.0, mag(rng)), angle(rng));
        if (z.imag() == 0.0) continue;
        const Complex r = csqrt(z);
        worst = std::max(worst, std::abs(r * r - z) / std::abs(z));
        if (r.real() < 0.0) ++negative_re;
    }
    const bool ok = worst <= 1e-12 && negative_re == 0;
    return {name, ok,
            "max |r^2 - z|/|z| = " + sci(worst) + " (limit 1e-12), Re < 0 count " + std::to_string(negative_re)};
}

CheckResult check_pade_exactness(std::uint64_t seed)
{
    const std::string name = "Pade reconstructs rationals";
    try {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> deg(0, 2);
        double worst = 0.0;
        int made = 0;
        while (made < 200) {
            const auto m = static_cast<std::size_t>(deg(rng));
            const auto n = static_cast<std::size_t>(deg(rng));
            const auto num = random_poly(rng, m, false);
            const auto den = random_poly(rng, n, true);
            // the denominator must stay clear of zero on the test interval
            double dmin = std::numeric_limits<double>::infinity();
            for (int j = 0; j <= 50; ++j) dmin = std::min(dmin, std::abs(poly::evaluate(den, 0.01 * j)));
            if (dmin < 0.2) continue;
            // Taylor coefficients of num/den through t^5
            std::vector<Complex> c(6);
            for (std::size_t k = 0; k < c.size(); ++k) {
                Complex s = k < num.size() ? num[k] : Complex{};
                for (std::size_t j = 1; j <= std::min(k, n); ++j) s -= den[j] * c[k - j];
                c[k] = s;
            }
            const auto r = pade(TruncSeries(c), m, n);
            for (int j = 0; j <= 50; ++j) {
                const double x = 0.01 * j;
                const Complex exact = poly::evaluate(num, x) / poly::evaluate(den, x);
                worst = std::max(worst, std::abs(r.evaluate(x) - exact));
            }
            ++made;
        }
        return {name, worst <= 1e-8, "200 cases, max pointwise error on [0,0.5] = " + sci(worst) + " (limit 1e-8)"};
    } catch (const std::exception& e) {
        return failed_with(name, e);
    }
}

CheckResult check_resummation_fixed_point(std::uint64_t seed)
{
    const std::string name = "Laplace-Pade fixed point";
    try {
        std::mt19937_64 rng(seed);
        double worst = 0.0;
        int made = 0;
        while (made < 200) {
            const Complex c1 = random_complex(rng, 2.0), c2 = random_complex(rng, 2.0);
            const Complex r1 = random_complex(rng, 2.0), r2 = random_complex(rng, 2.0);
            if (std::abs(c1) < 0.3 || std::abs(c2) < 0.3 || std::abs(r1 - r2) < 0.3) continue;
            const ExpPolySum f({{c1, r1, 0}, {c2, r2, 0}});
            const auto g = laplace_pade_resum(f.taylor(5), 2, 2);
            for (int j = 0; j <= 100; ++j) {
                const double x = 0.01 * j;
                worst = std::max(worst, std::abs(g.evaluate(x) - f.evaluate(x)));
            }
            ++made;
        }
        return {name, worst <= 1e-8, "200 two-rate sums, max pointwise error on [0,1] = " + sci(worst) + " (limit 1e-8)"};
    } catch (const std::exception& e) {
        return failed_with(name, e);
    }
}

CheckResult check_hpm_against_integrator()
{
    const std::string name = "HPM order 3 vs integrator";
    try {
        const auto p = PhysParams::with_detuning(1.0, 1.0, 0.0, 1.0, 2.0, Complex{});
        const auto h = hpm_solve_sigma1(p, 3);
        const auto ic = sigma1_initial_state(p);
        const OdeRhs rhs = [&p](double t, std::span<const Complex> y, std::span<Complex> dy) {
            const auto d = sigma1_rhs(t, {y[0], y[1]}, p);
            dy[0] = d.alpha;
            dy[1] = d.beta;
        };
        RkOptions opts;
        opts.rtol = 1e-13;
        opts.atol = 1e-15;

        // uniform grid for the agreement bound
        const auto grid = make_grid(0.0, 0.05, 101);
        const auto ref = rk_oracle(rhs, {ic.alpha, ic.beta}, grid, opts);
        double worst = 0.0;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const auto s = h.evaluate(grid[k]);
            worst = std::max({worst, std::abs(s.alpha - ref.y[k][0]), std::abs(s.beta - ref.y[k][1])});
        }

        // log-spaced grid over two decades for the convergence order
        std::vector<double> lg{0.0};
        for (int j = 0; j <= 20; ++j) lg.push_back(5e-4 * std::pow(10.0, j / 10.0));
        const auto ref2 = rk_oracle(rhs, {ic.alpha, ic.beta}, lg, opts);
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double m = static_cast<double>(lg.size() - 1);
        for (std::size_t k = 1; k < lg.size(); ++k) {
            const auto s = h.evaluate(lg[k]);
            const double e = std::max(std::abs(s.alpha - ref2.y[k][0]), std::abs(s.beta - ref2.y[k][1]));
            const double x = std::log(lg[k]), y = std::log(e);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        const bool ok = worst <= 1e-6 && slope >= 3.7;
        return {name, ok, "max error on [0,0.05] = " + sci(worst) + " (limit 1e-6), log-log slope " + fix(slope, 2) +
                              " (need >= 3.7)"};
    } catch (const std::exception& e) {
        return failed_with(name, e);
    }
}

CheckResult check_sigma3_invariants()
{
    const std::string name = "sigma-3 conservation and constraint";
    try {
        const auto p = default_params();
        const auto grid = make_grid(0.0, 100.0, 10'001);
        const auto ic = sigma3_initial_state(p, 0.0);
        const auto sol = solve_sigma3(p, ic, grid);
        const Complex c0 = sol.beta()[0] + I * sol.alpha()[0] - classical_field(grid[0], p);
        double drift = 0.0, residual = 0.0;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const Complex c = sol.beta()[k] + I * sol.alpha()[k] - classical_field(grid[k], p);
            drift = std::max(drift, std::abs(c - c0));
            residual = std::max(residual, std::abs(sigma3_constraint(grid[k], sol.alpha()[k], sol.beta()[k], p)));
        }
        const bool ok = drift <= 1e-8 && residual <= 1e-8;
        return {name, ok, "invariant drift " + sci(drift) + ", constraint residual " + sci(residual) + " (limits 1e-8)"};
    } catch (const std::exception& e) {
        return failed_with(name, e);
    }
}

CheckResult check_sigma2_invariants()
{
    const std::string name = "sigma-2 constraint maintenance";
    try {
        const auto p = default_params();
        const auto coarse = make_grid(0.0, 20.0, 2'001);
        const auto fine = make_grid(0.0, 20.0, 4'001);
        const auto a = solve_sigma2(p, Complex{}, coarse);
        const auto b = solve_sigma2(p, Complex{}, fine);
        double rb = 0.0, ra = 0.0, change = 0.0;
        for (std::size_t k = 0; k < coarse.size(); ++k) {
            const double t = coarse[k];
            rb = std::max(rb, std::abs(sigma2_constraint(t, a.alpha()[k], a.beta()[k], p)));
            ra = std::max(ra, std::abs(sigma2_rate_residual(t, a.beta()[k], a.dalpha()[k], a.dbeta()[k], p)));
            change = std::max(change, std::abs(a.beta()[k] - b.beta()[2 * k]));
        }
        const bool ok = rb <= 1e-8 && ra <= 1e-6 && change < 1e-6;
        return {name, ok, "constraint " + sci(rb) + " (1e-8), rate " + sci(ra) + " (1e-6), grid halving " +
                              sci(change) + " (1e-6)"};
    } catch (const std::exception& e) {
        return failed_with(name, e);
    }
}

CheckResult check_intertwining()
{
    const std::string name = "intertwining relation";
    try {
        const auto p = default_params();
        const auto grid = make_grid(0.0, 20.0, 2'001);
        const auto s2 = solve_sigma2(p, Complex{}, grid);
        const auto s3 = solve_sigma3(p, sigma3_initial_state(p, 0.0), grid);
        double r2 = 0.0, r3 = 0.0;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            r2 = std::max(r2, intertwine_residual(grid[k], s2.alpha()[k], s2.beta()[k], s2.dalpha()[k],
                                                  s2.dbeta()[k], Sigma::Two, p));
            r3 = std::max(r3, intertwine_residual(grid[k], s3.alpha()[k], s3.beta()[k], s3.dalpha()[k],
                                                  s3.dbeta()[k], Sigma::Three, p));
        }
        const bool ok = r2 <= 1e-5 && r3 <= 1e-5;
        return {name, ok, "max residual sigma-2 " + sci(r2) + ", sigma-3 " + sci(r3) + " (limit 1e-5)"};
    } catch (const std::exception& e) {
        return failed_with(name, e);
    }
}

CheckResult check_switch_on_damping()
{
    const std::string name = "sigma-1 switch-on damping";
    try {
        const auto p = default_params();
        const auto grid = make_grid(0.0, 100.0, 200'001);
        const auto sol = solve_sigma1(p, grid);
        const auto drive = drive_from_solution(sol).switched_on(10.0);
        const auto w = parallel::modified_inversion(grid, drive.nbb(), p, poisson_truncation(p.mean_photons()));
        const double early = window_amplitude(grid, w, 10.0, 25.0);
        const double late = window_amplitude(grid, w, 85.0, 100.0);
        const double ratio = late / early;
        return {name, ratio <= 0.25,
                "envelope [85,100] / [10,25] = " + sci(late) + " / " + sci(early) + " = " + fix(ratio, 4) +
                    " (limit 0.25)"};
    } catch (const std::exception& e) {
        return failed_with(name, e);
    }
}

std::vector<CheckResult> run_verification_suite()
{
    return {check_vacuum_rabi(),
            check_normalization(),
            check_collapse_revival(),
            check_csqrt(),
            check_pade_exactness(),
            check_resummation_fixed_point(),
            check_hpm_against_integrator(),
            check_sigma3_invariants(),
            check_sigma2_invariants(),
            check_intertwining(),
            check_switch_on_damping()};
}

std::string format_report(std::span<const CheckResult> results)
{
    std::string out;
    std::size_t passed = 0;
    for (const auto& r : results) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%-4s  %-38s  ", r.pass ? "PASS" : "FAIL", r.name.c_str());
        out += buf;
        out += r.detail;
        out += '\n';
        if (r.pass) ++passed;
    }
    out += std::to_string(passed) + "/" + std::to_string(results.size()) + " checks passed\n";
    return out;
}

} // namespace dqed
