#include "dqed/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dqed/errors.hpp"

namespace dqed {

namespace {

// Dormand-Prince tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;
// Continuous extension (Hairer, contd5).
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

double scaled_norm(std::span<const Complex> v, std::span<const Complex> y0, std::span<const Complex> y1,
                   const RkOptions& o)
{
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double sc = o.atol + o.rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        const double r = std::abs(v[i]) / sc;
        s += r * r;
    }
    return std::sqrt(s / static_cast<double>(v.size()));
}

} // namespace

RkResult rk_oracle(const OdeRhs& rhs, const OdeState& ic, std::span<const double> grid, const RkOptions& opts)
{
    if (grid.empty()) throw std::invalid_argument("rk_oracle: empty grid");
    if (ic.empty()) throw std::invalid_argument("rk_oracle: empty state");
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (!(grid[k] > grid[k - 1])) throw std::invalid_argument("rk_oracle: grid not strictly increasing");
    }
    const std::size_t n = ic.size();
    RkResult out;
    out.t.assign(grid.begin(), grid.end());
    out.y.reserve(grid.size());
    out.y.push_back(ic);
    if (grid.size() == 1) return out;

    const double t_end = grid.back();
    const double span = t_end - grid.front();
    const double h_min = 1e-14 * span;

    OdeState y = ic, yn(n), tmp(n), err(n);
    std::vector<OdeState> k(7, OdeState(n));
    std::vector<OdeState> cont(5, OdeState(n));

    double t = grid.front();
    rhs(t, y, k[0]);

    double h;
    if (opts.fixed_step > 0.0) {
        h = opts.fixed_step;
    } else {
        // Initial step after Hairer & Wanner.
        const double dn0 = scaled_norm(y, y, y, opts);
        const double dn1 = scaled_norm(k[0], y, y, opts);
        double h0 = (dn0 < 1e-5 || dn1 < 1e-5) ? 1e-6 : 0.01 * dn0 / dn1;
        h0 = std::min(h0, span);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h0 * k[0][i];
        rhs(t + h0, tmp, k[1]);
        for (std::size_t i = 0; i < n; ++i) err[i] = (k[1][i] - k[0][i]) / h0;
        const double dn2 = scaled_norm(err, y, y, opts);
        const double m = std::max(dn1, dn2);
        const double h1 = m <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / m, 0.2);
        h = std::min(100.0 * h0, h1);
    }

    std::size_t next = 1;
    bool last_rejected = false;
    while (next < grid.size()) {
        if (out.accepted + out.rejected >= opts.max_steps) throw StepUnderflow("rk_oracle: step budget exhausted", t);
        bool final_step = false;
        if (t + h >= t_end) {
            h = t_end - t;
            final_step = true;
        }
        if (h < h_min && !final_step) throw StepUnderflow("rk_oracle: step size underflow", t);

        auto stage = [&](std::size_t s, double ct, std::initializer_list<std::pair<std::size_t, double>> coef) {
            for (std::size_t i = 0; i < n; ++i) {
                Complex acc = y[i];
                for (const auto& [j, a] : coef) acc += h * a * k[j][i];
                tmp[i] = acc;
            }
            rhs(t + ct * h, tmp, k[s]);
        };
        stage(1, c2, {{0, a21}});
        stage(2, c3, {{0, a31}, {1, a32}});
        stage(3, c4, {{0, a41}, {1, a42}, {2, a43}});
        stage(4, c5, {{0, a51}, {1, a52}, {2, a53}, {3, a54}});
        stage(5, 1.0, {{0, a61}, {1, a62}, {2, a63}, {3, a64}, {4, a65}});
        for (std::size_t i = 0; i < n; ++i) {
            yn[i] = y[i] + h * (a71 * k[0][i] + a73 * k[2][i] + a74 * k[3][i] + a75 * k[4][i] + a76 * k[5][i]);
        }
        const double t_new = final_step ? t_end : t + h;
        rhs(t_new, yn, k[6]);

        double err_norm = 0.0;
        if (opts.fixed_step <= 0.0) {
            for (std::size_t i = 0; i < n; ++i) {
                err[i] = h * (e1 * k[0][i] + e3 * k[2][i] + e4 * k[3][i] + e5 * k[4][i] + e6 * k[5][i] +
                              e7 * k[6][i]);
            }
            err_norm = scaled_norm(err, y, yn, opts);
            if (!std::isfinite(err_norm)) err_norm = 1e10;
        }

        if (err_norm <= 1.0) {
            for (std::size_t i = 0; i < n; ++i) {
                const Complex ydiff = yn[i] - y[i];
                const Complex bspl = h * k[0][i] - ydiff;
                cont[0][i] = y[i];
                cont[1][i] = ydiff;
                cont[2][i] = bspl;
                cont[3][i] = ydiff - h * k[6][i] - bspl;
                cont[4][i] = h * (d1 * k[0][i] + d3 * k[2][i] + d4 * k[3][i] + d5 * k[4][i] + d6 * k[5][i] +
                                  d7 * k[6][i]);
            }
            while (next < grid.size() && (grid[next] <= t_new || final_step)) {
                if (grid[next] == t_new) {
                    out.y.push_back(yn);
                } else {
                    const double th = (grid[next] - t) / h;
                    const double th1 = 1.0 - th;
                    OdeState yi(n);
                    for (std::size_t i = 0; i < n; ++i) {
                        yi[i] = cont[0][i] +
                                th * (cont[1][i] + th1 * (cont[2][i] + th * (cont[3][i] + th1 * cont[4][i])));
                    }
                    out.y.push_back(std::move(yi));
                }
                ++next;
            }
            ++out.accepted;
            t = t_new;
            y.swap(yn);
            k[0].swap(k[6]);
            if (opts.fixed_step <= 0.0) {
                double fac = err_norm == 0.0 ? 10.0 : 0.9 * std::pow(err_norm, -0.2);
                fac = std::clamp(fac, 0.2, last_rejected ? 1.0 : 10.0);
                h *= fac;
            } else {
                h = opts.fixed_step;
            }
            last_rejected = false;
        } else {
            ++out.rejected;
            h *= std::max(0.2, 0.9 * std::pow(err_norm, -0.2));
            last_rejected = true;
        }
    }
    return out;
}

} // namespace dqed
