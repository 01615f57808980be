#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "dqed/darboux.hpp"
#include "dqed/sigma_solvers.hpp"

using namespace dqed;

namespace {

using M2 = std::array<std::array<Complex, 2>, 2>;

M2 mul(const M2& a, const M2& b)
{
    M2 c{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) c[i][j] += a[i][k] * b[k][j];
    return c;
}

M2 add(const M2& a, const M2& b, Complex s = 1.0)
{
    M2 c{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) c[i][j] = a[i][j] + s * b[i][j];
    return c;
}

M2 scale(const M2& a, Complex s)
{
    return add(M2{}, a, s);
}

M2 pauli(int i)
{
    if (i == 1) return M2{{{0.0, 1.0}, {1.0, 0.0}}};
    if (i == 2) return M2{{{0.0, -I}, {I, 0.0}}};
    return M2{{{1.0, 0.0}, {0.0, -1.0}}};
}

M2 offdiag(Complex upper, Complex lower)
{
    return M2{{{0.0, upper}, {lower, 0.0}}};
}

// Independent element-wise evaluation of the intertwining residual.
double residual_by_hand(double t, Complex a, Complex be, Complex da, Complex dbe, int sigma, const PhysParams& p)
{
    const double h = p.hbar * p.coupling;
    const Complex b = p.b0 * std::exp(Complex{0.0, -p.field_freq * t});
    const Complex db = Complex{0.0, -p.field_freq} * b;
    const Complex b1 = 2.0 * be - b;
    const M2 id{{{1.0, 0.0}, {0.0, 1.0}}};
    const M2 s = pauli(sigma);
    const M2 B = add(scale(id, a), s, I * (b - be));
    const M2 dB = add(scale(id, da), s, I * (db - dbe));
    M2 r = scale(mul(pauli(3), dB), I);
    r = add(r, mul(offdiag(b1, std::conj(b1)), B), h);
    r = add(r, mul(B, offdiag(b, std::conj(b))), -h);
    r = add(r, offdiag(db, std::conj(db)), -h);
    double n = 0.0;
    for (auto& row : r)
        for (auto& x : row) n += std::norm(x);
    return std::sqrt(n);
}

} // namespace

TEST_SUITE("darboux")
{
    TEST_CASE("sigma index mapping")
    {
        CHECK(sigma_from_index(2) == Sigma::Two);
        CHECK(index_of(Sigma::Three) == 3);
        CHECK_THROWS_AS(sigma_from_index(0), std::invalid_argument);
        CHECK_THROWS_AS(sigma_from_index(4), std::invalid_argument);
    }

    TEST_CASE("classical_field")
    {
        const auto p = default_params();
        CHECK(classical_field(0.0, p) == Complex{p.b0, 0.0});
        const Complex half = classical_field(std::numbers::pi / p.field_freq, p);
        CHECK(std::abs(half + p.b0) < 1e-14);
        for (double t : {0.3, 7.0, 1e4}) CHECK(std::abs(classical_field(t, p)) == doctest::Approx(p.b0).epsilon(1e-14));
        const double t = 1.1, h = 1e-6;
        const Complex fd = (classical_field(t + h, p) - classical_field(t - h, p)) / (2 * h);
        CHECK(std::abs(classical_field_rate(t, p) - fd) < 1e-8);
    }

    TEST_CASE("transform_field")
    {
        const auto p = default_params();
        for (double t : {0.0, 0.8, 5.0}) {
            const Complex b = classical_field(t, p);
            CHECK(std::abs(transform_field(t, b, p) - b) < 1e-15);
            CHECK(std::abs(transform_field(t, 0.0, p) + b) < 1e-15);
        }
        CHECK(transform_field(0.0, p.b0, p) == Complex{p.b0, 0.0});
    }

    TEST_CASE("potential_magnitude")
    {
        const auto p = default_params();
        const double b2 = p.b0 * p.b0;
        for (double t : {0.0, 0.4, 3.0}) {
            CHECK(potential_magnitude(t, 0.0, p) == doctest::Approx(b2).epsilon(1e-14));
            CHECK(potential_magnitude(t, p.b0 * std::cos(p.field_freq * t), p) == doctest::Approx(b2).epsilon(1e-13));
        }
        CHECK(potential_magnitude(0.0, p.b0, p) == doctest::Approx(b2).epsilon(1e-14));
        auto q = p;
        q.coupling = 3.0;
        CHECK(potential_magnitude(0.0, 0.0, q, PotentialScale::HbarCouplingSquared) == doctest::Approx(9.0 * b2));
    }

    TEST_CASE("vector potential norm is (hbar Omega)^2 |F|^2")
    {
        auto p = default_params();
        p.coupling = 1.7;
        const Complex f{0.3, -2.1};
        const auto v = vector_potential(f, p);
        const double h = p.hbar_coupling();
        CHECK(v.norm_squared() == doctest::Approx(h * h * std::norm(f)).epsilon(1e-14));
        CHECK(untransformed_potential(0.4, p).norm_squared() == doctest::Approx(h * h * p.b0 * p.b0).epsilon(1e-14));
    }

    TEST_CASE("intertwining residual at the origin for sigma-1")
    {
        auto p = default_params();
        p.b0 = 2.0;
        const double h = p.hbar_coupling(), w = p.field_freq, b0 = p.b0;
        // hand expansion: diagonal -2i hO b0^2, off-diagonal +/- i w b0 (1 + hO)
        const double expected = std::sqrt(8.0 * h * h * std::pow(b0, 4) + 2.0 * w * w * b0 * b0 * (1 + h) * (1 + h));
        CHECK(expected == doctest::Approx(std::sqrt(160.0)).epsilon(1e-15));
        CHECK(intertwine_residual(0.0, 0.0, 0.0, 0.0, 0.0, Sigma::One, p) == doctest::Approx(expected).epsilon(1e-14));
        const auto m = intertwine_residual_matrix(0.0, 0.0, 0.0, 0.0, 0.0, Sigma::One, p);
        CHECK(std::abs(m(0, 0) - Complex{0.0, -2.0 * h * b0 * b0}) < 1e-14);
        CHECK(std::abs(m(0, 1) - Complex{0.0, w * b0 * (1 + h)}) < 1e-14);
    }

    TEST_CASE("intertwining residual matches an element-wise evaluation")
    {
        std::mt19937_64 rng(17);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        auto p = default_params();
        p.coupling = 1.3;
        for (int trial = 0; trial < 100; ++trial) {
            const double t = 3.0 * u(rng);
            const Complex a{u(rng), u(rng)}, be{u(rng), u(rng)}, da{u(rng), u(rng)}, db{u(rng), u(rng)};
            for (int s = 1; s <= 3; ++s) {
                CHECK(intertwine_residual(t, a, be, da, db, sigma_from_index(s), p) ==
                      doctest::Approx(residual_by_hand(t, a, be, da, db, s, p)).epsilon(1e-12));
            }
        }
    }

    TEST_CASE("intertwining residual is continuous in the state")
    {
        const auto p = default_params();
        const Complex a{0.4, -0.2}, be{1.1, 0.3};
        const double r0 = intertwine_residual(0.7, a, be, 0.1, 0.2, Sigma::Two, p);
        for (double d : {1e-3, 1e-5, 1e-7}) {
            const double r = intertwine_residual(0.7, a + d, be + d, 0.1, 0.2, Sigma::Two, p);
            CHECK(std::abs(r - r0) < 50.0 * d);
        }
    }

    TEST_CASE("sigma-3 solutions zero the diagonal (1,1) entry of the residual")
    {
        const auto p = default_params();
        const auto grid = make_grid(0.0, 10.0, 1001);
        const auto sol = solve_sigma3(p, sigma3_initial_state(p, 0.0), grid);
        double worst11 = 0.0, full = 0.0;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const auto m = intertwine_residual_matrix(grid[k], sol.alpha()[k], sol.beta()[k], sol.dalpha()[k],
                                                      sol.dbeta()[k], Sigma::Three, p);
            worst11 = std::max(worst11, std::abs(m(0, 0)));
            full = std::max(full, m.norm());
        }
        CHECK(worst11 < 1e-8);
        MESSAGE("full residual norm along sigma-3 (other entries are not constrained by the solver): " << full);
    }

    TEST_CASE("DarbouxSolution derives b1 and |V| pointwise")
    {
        const auto p = default_params();
        const std::vector<double> t{0.0, 0.5};
        const std::vector<Complex> beta{Complex{1.0, 0.5}, Complex{-0.3, 0.2}};
        const DarbouxSolution s(Sigma::Two, t, {0.0, 0.0}, beta, {0.0, 0.0}, {0.0, 0.0}, p);
        for (std::size_t k = 0; k < 2; ++k) {
            CHECK(s.b1()[k] == transform_field(t[k], beta[k], p));
            CHECK(s.vmag()[k] == potential_magnitude(t[k], beta[k], p));
        }
        CHECK_THROWS_AS(DarbouxSolution(Sigma::Two, t, {0.0}, beta, {0.0, 0.0}, {0.0, 0.0}, p), std::invalid_argument);
    }
}
