#include "dqed/jc_model.hpp"

#include <cmath>
#include <stdexcept>

namespace dqed {

PhysParams PhysParams::with_detuning(double coupling, double field_freq, double detuning, double hbar, double b0,
                                     Complex gamma)
{
    PhysParams p;
    p.coupling = coupling;
    p.field_freq = field_freq;
    p.atomic_freq = field_freq + detuning;
    p.hbar = hbar;
    p.b0 = b0;
    p.gamma = gamma;
    return p;
}

PhysParams default_params()
{
    return PhysParams::with_detuning(1.0, 1.0, 2.0 * std::sqrt(2.0), 1.0, 2.0, Complex{std::sqrt(30.0), 0.0});
}

InversionTrace::InversionTrace(std::vector<double> t, std::vector<double> w) : t_(std::move(t)), w_(std::move(w))
{
    if (t_.size() != w_.size()) throw std::invalid_argument("InversionTrace: t and w differ in length");
    for (std::size_t k = 1; k < t_.size(); ++k) {
        if (!(t_[k] > t_[k - 1])) throw std::invalid_argument("InversionTrace: time grid not strictly increasing");
    }
}

std::vector<double> make_grid(double t0, double t1, std::size_t samples)
{
    if (samples < 2) throw std::invalid_argument("make_grid: need at least two samples");
    if (!(t1 > t0)) throw std::invalid_argument("make_grid: t1 must exceed t0");
    std::vector<double> t(samples);
    const double h = (t1 - t0) / static_cast<double>(samples - 1);
    for (std::size_t k = 0; k < samples; ++k) t[k] = t0 + h * static_cast<double>(k);
    t.back() = t1;
    return t;
}

double rabi_frequency(int n, const PhysParams& p)
{
    const double k = p.kappa();
    return std::sqrt(p.coupling * (k * k + n + 1));
}

std::vector<double> poisson_weights(double nbar, int n_max)
{
    std::vector<double> w(static_cast<std::size_t>(n_max) + 1, 0.0);
    if (nbar == 0.0) {
        w[0] = 1.0;
        return w;
    }
    const double ln_nbar = std::log(nbar);
    for (int n = 0; n <= n_max; ++n) w[static_cast<std::size_t>(n)] = std::exp(-nbar + n * ln_nbar - std::lgamma(n + 1.0));
    return w;
}

int poisson_truncation(double nbar, double tol)
{
    if (nbar < 0.0) throw std::invalid_argument("poisson_truncation: negative mean");
    if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("poisson_truncation: tol must lie in (0, 1)");
    if (nbar == 0.0) return 0;

    // Sum the tail from far above the mode so that small masses are not lost
    // to cancellation against 1.
    const int hi = static_cast<int>(nbar + 40.0 * std::sqrt(nbar) + 60.0);
    const auto w = poisson_weights(nbar, hi);
    std::vector<double> tail(w.size() + 1, 0.0);
    for (std::size_t n = w.size(); n-- > 0;) tail[n] = tail[n + 1] + w[n];
    for (int n = 0; n < hi; ++n) {
        if (tail[static_cast<std::size_t>(n) + 1] < tol) return n;
    }
    return hi;
}

double atomic_inversion(double t, const PhysParams& p, int n_max)
{
    const auto w = poisson_weights(p.mean_photons(), n_max);
    const double om2 = p.coupling * p.coupling;
    double sum = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        const double on = rabi_frequency(n, p);
        const double s = std::sin(on * t);
        sum += w[static_cast<std::size_t>(n)] * (1.0 - 2.0 * om2 * (n + 1) * s * s / (on * on));
    }
    return sum;
}

double jc_potential_magnitude(int n, const PhysParams& p)
{
    const double h = p.hbar_coupling();
    return h * h * (n + 0.5);
}

double classical_quantum_boundary(int n)
{
    return std::sqrt(n + 0.5);
}

} // namespace dqed
