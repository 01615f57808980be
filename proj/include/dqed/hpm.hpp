#pragma once

// Homotopy-perturbation solution of the sigma-1 Riccati pair
//
//   d(alpha)/dt = 2 hO [ beta^2 - beta (e^{i w t} + b0 e^{-i w t}) - b0 ]
//   d(beta)/dt  = i w b0 e^{-i w t} (hO - 1) + 2 hO alpha (beta - cos w t)
//
// with beta(0) = b0 and alpha(0) = i w b0 (1 - hO) / (2 hO (b0 - 1)),
// followed by Laplace-Pade resummation of the summed series.

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "dqed/complex_math.hpp"
#include "dqed/jc_model.hpp"
#include "dqed/series.hpp"

namespace dqed {

struct RiccatiState {
    Complex alpha;
    Complex beta;
};

/// Finite sum of c t^k e^{i m w t} over integer harmonics m, with a fixed w.
/// Closed under addition, multiplication and integration from 0.
class HarmonicSeries {
public:
    using Key = std::pair<int, unsigned>; // (harmonic m, power k)

    explicit HarmonicSeries(double omega) : omega_(omega) {}
    static HarmonicSeries constant(double omega, Complex c);
    static HarmonicSeries harmonic(double omega, int m, Complex c);

    double omega() const noexcept { return omega_; }
    const std::map<Key, Complex>& terms() const noexcept { return terms_; }

    void add_term(int m, unsigned k, Complex c);

    HarmonicSeries& operator+=(const HarmonicSeries& o);
    HarmonicSeries& operator*=(Complex s);
    friend HarmonicSeries operator+(HarmonicSeries a, const HarmonicSeries& b) { return a += b; }
    friend HarmonicSeries operator*(HarmonicSeries a, Complex s) { return a *= s; }
    friend HarmonicSeries operator*(const HarmonicSeries& a, const HarmonicSeries& b);

    /// Exact antiderivative vanishing at t = 0.
    HarmonicSeries integral() const;
    HarmonicSeries derivative() const;

    Complex evaluate(double t) const noexcept;
    TruncSeries taylor(std::size_t order) const;
    ExpPolySum to_exp_poly() const;

private:
    double omega_;
    std::map<Key, Complex> terms_;
};

/// Right-hand side of the sigma-1 Riccati pair.
RiccatiState sigma1_rhs(double t, const RiccatiState& s, const PhysParams& p);

/// Initial state (alpha(0), beta(0)). Throws DegenerateAmplitude when b0 == 1.
RiccatiState sigma1_initial_state(const PhysParams& p);

/// Order-by-order HPM components; entry k of each list is the p^k term.
struct HpmExpansion {
    std::size_t order = 0;        // embedding order P
    std::size_t series_order = 0; // Taylor truncation K
    std::vector<HarmonicSeries> alpha_exact;
    std::vector<HarmonicSeries> beta_exact;
    std::vector<TruncSeries> alpha_orders;
    std::vector<TruncSeries> beta_orders;

    /// Sum of orders 0..P, evaluated exactly.
    RiccatiState evaluate(double t) const;
    RiccatiState derivative(double t) const;
    TruncSeries summed_alpha() const;
    TruncSeries summed_beta() const;
};

/// Requires P >= 1; K defaults to P. Throws DegenerateAmplitude when b0 == 1.
HpmExpansion hpm_solve_sigma1(const PhysParams& p, std::size_t P, std::size_t K = 0);

struct ResummedSigma1 {
    ExpPolySum alpha;
    ExpPolySum beta;
};

/// Laplace-Pade resummation of the summed alpha and beta series.
ResummedSigma1 resum_sigma1(const HpmExpansion& h, std::size_t M, std::size_t N);

/// Reference closed forms for alpha_1(t) and beta_1(t), evaluated as given.
/// Throws DegenerateAmplitude when b0 == 1.
RiccatiState closed_form_sigma1(double t, const PhysParams& p);

} // namespace dqed
