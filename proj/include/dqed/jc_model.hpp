#pragma once

#include <span>
#include <vector>

#include "dqed/complex_math.hpp"

namespace dqed {

/// Physical constants of the atom-field model.
/// Detuning and kappa are derived on every call, never cached.
struct PhysParams {
    double coupling = 1.0;     // Omega
    double field_freq = 1.0;   // omega
    double atomic_freq = 1.0;  // omega_0
    double hbar = 1.0;
    double b0 = 2.0;           // classical field amplitude
    Complex gamma{};           // coherent-state amplitude

    /// Builds parameters from a detuning instead of the atomic frequency.
    static PhysParams with_detuning(double coupling, double field_freq, double detuning, double hbar, double b0,
                                    Complex gamma);

    double detuning() const noexcept { return atomic_freq - field_freq; }
    double kappa() const noexcept { return detuning() / (2.0 * coupling); }
    double mean_photons() const noexcept { return std::norm(gamma); }
    double hbar_coupling() const noexcept { return hbar * coupling; }
};

/// Standard parameter set: mean photon number 30, detuning 2 sqrt(2), coupling 1.
PhysParams default_params();

/// Time grid paired with inversion values.
class InversionTrace {
public:
    /// Throws std::invalid_argument when sizes differ or t is not strictly increasing.
    InversionTrace(std::vector<double> t, std::vector<double> w);

    std::span<const double> t() const noexcept { return t_; }
    std::span<const double> w() const noexcept { return w_; }
    std::size_t size() const noexcept { return t_.size(); }

private:
    std::vector<double> t_;
    std::vector<double> w_;
};

/// Uniform grid of `samples` points from t0 to t1 inclusive.
std::vector<double> make_grid(double t0, double t1, std::size_t samples);

/// Omega_n = sqrt(Omega (kappa^2 + n + 1)).
double rabi_frequency(int n, const PhysParams& p);

/// Poisson weights e^{-nbar} nbar^n / n! for n = 0..n_max, evaluated in log space.
std::vector<double> poisson_weights(double nbar, int n_max);

/// Smallest N whose Poisson(nbar) tail mass beyond N is below tol.
int poisson_truncation(double nbar, double tol = 1e-12);

/// Jaynes-Cummings atomic inversion for an initially excited atom and a
/// coherent field, truncated at n_max photons.
double atomic_inversion(double t, const PhysParams& p, int n_max);

/// (hbar Omega)^2 (n + 1/2).
double jc_potential_magnitude(int n, const PhysParams& p);

/// |b0| at which the classical magnitude (hbar Omega b0)^2 equals the
/// quantum one for photon number n: sqrt(n + 1/2).
double classical_quantum_boundary(int n);

} // namespace dqed
