#include <cmath>
#include <numbers>

#include "doctest.h"
#include "dqed/jc_model.hpp"

using namespace dqed;

namespace {

PhysParams params(double coupling, double detuning, double nbar)
{
    return PhysParams::with_detuning(coupling, 1.0, detuning, 1.0, 2.0, Complex{std::sqrt(nbar), 0.0});
}

// Smallest N with sum_{n>N} P(n) < tol, summing the tail directly from lgamma.
int tail_oracle(double nbar, double tol)
{
    for (int N = 0;; ++N) {
        long double tail = 0.0L;
        for (int n = N + 1; n < N + 2000; ++n)
            tail += std::exp(static_cast<long double>(-nbar + n * std::log(nbar) - std::lgamma(n + 1.0)));
        if (tail < tol) return N;
    }
}

} // namespace

TEST_SUITE("jc_model")
{
    TEST_CASE("default parameters")
    {
        const auto p = default_params();
        CHECK(p.coupling == 1.0);
        CHECK(p.hbar == 1.0);
        CHECK(p.mean_photons() == doctest::Approx(30.0).epsilon(1e-14));
        CHECK(p.detuning() == doctest::Approx(2.0 * std::numbers::sqrt2).epsilon(1e-14));
        CHECK(p.kappa() == doctest::Approx(std::numbers::sqrt2).epsilon(1e-14));
    }

    TEST_CASE("rabi_frequency")
    {
        CHECK(rabi_frequency(0, params(1.0, 0.0, 0.0)) == 1.0);
        CHECK(rabi_frequency(30, default_params()) == doctest::Approx(std::sqrt(33.0)).epsilon(1e-14));
        CHECK(rabi_frequency(0, params(4.0, 0.0, 0.0)) == doctest::Approx(2.0).epsilon(1e-15));
    }

    TEST_CASE("atomic_inversion is one at t = 0")
    {
        for (double nbar : {0.0, 1.0, 30.0, 80.0}) {
            const auto p = params(1.3, 0.7, nbar);
            CHECK(atomic_inversion(0.0, p, poisson_truncation(nbar, 1e-14)) == doctest::Approx(1.0).epsilon(1e-13));
        }
    }

    TEST_CASE("vacuum inversion is cos 2t")
    {
        const auto p = params(1.0, 0.0, 0.0);
        CHECK(atomic_inversion(std::numbers::pi / 2, p, 0) == doctest::Approx(-1.0).epsilon(1e-15));
        for (double t : {0.1, 1.7, 9.3}) CHECK(atomic_inversion(t, p, 0) == doctest::Approx(std::cos(2 * t)).epsilon(1e-14));
    }

    TEST_CASE("collapse at the default parameters")
    {
        const auto p = default_params();
        const int n_max = poisson_truncation(p.mean_photons());
        double lo = 1e9, hi = -1e9;
        // collapsed between the initial decay and the first revival near t = 36
        for (int k = 0; k <= 1000; ++k) {
            const double w = atomic_inversion(10.0 + 0.01 * k, p, n_max);
            lo = std::min(lo, w);
            hi = std::max(hi, w);
        }
        CHECK(0.5 * (hi - lo) < 0.05);
    }

    TEST_CASE("jc_potential_magnitude and the classical boundary")
    {
        CHECK(jc_potential_magnitude(0, params(1.0, 0.0, 0.0)) == 0.5);
        CHECK(jc_potential_magnitude(3, params(2.0, 0.0, 0.0)) == 14.0);
        for (int n : {0, 3, 30}) {
            const double b0 = classical_quantum_boundary(n);
            auto p = params(1.7, 0.0, 0.0);
            const double h = p.hbar_coupling();
            CHECK(h * b0 * h * b0 == doctest::Approx(jc_potential_magnitude(n, p)).epsilon(1e-14));
        }
    }

    TEST_CASE("poisson_weights")
    {
        const auto w0 = poisson_weights(0.0, 3);
        CHECK(w0[0] == 1.0);
        CHECK(w0[1] == 0.0);
        const auto w = poisson_weights(2.5, 60);
        double s = 0.0;
        for (double x : w) s += x;
        CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(w[3] == doctest::Approx(std::exp(-2.5) * 2.5 * 2.5 * 2.5 / 6.0).epsilon(1e-14));
    }

    TEST_CASE("poisson_truncation against a direct tail sum")
    {
        CHECK(poisson_truncation(0.0, 1e-12) == 0);
        for (double nbar : {0.5, 5.0, 30.0, 100.0})
            for (double tol : {1e-6, 1e-12, 1e-14}) CHECK(poisson_truncation(nbar, tol) == tail_oracle(nbar, tol));
    }

    TEST_CASE("poisson_truncation is monotone in tol")
    {
        int prev = 0;
        for (double tol = 1e-2; tol >= 1e-15; tol /= 10) {
            const int n = poisson_truncation(30.0, tol);
            CHECK(n >= prev);
            prev = n;
        }
    }

    TEST_CASE("argument validation")
    {
        CHECK_THROWS_AS(poisson_truncation(-1.0), std::invalid_argument);
        CHECK_THROWS_AS(poisson_truncation(1.0, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(make_grid(1.0, 1.0, 10), std::invalid_argument);
        CHECK_THROWS_AS(make_grid(0.0, 1.0, 1), std::invalid_argument);
        CHECK_THROWS_AS(InversionTrace({0.0, 1.0}, {1.0}), std::invalid_argument);
        CHECK_THROWS_AS(InversionTrace({0.0, 0.0}, {1.0, 1.0}), std::invalid_argument);
    }

    TEST_CASE("make_grid end points")
    {
        const auto g = make_grid(0.0, 100.0, 5000);
        REQUIRE(g.size() == 5000);
        CHECK(g.front() == 0.0);
        CHECK(g.back() == 100.0);
    }
}
