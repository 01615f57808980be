#include "dqed/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "dqed/inversion.hpp"

namespace dqed {

namespace serial {

std::vector<double> standard_inversion(std::span<const double> t, const PhysParams& p, int n_max)
{
    std::vector<double> w(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) w[k] = atomic_inversion(t[k], p, n_max);
    return w;
}

std::vector<double> modified_inversion(std::span<const double> t, std::span<const double> nbb, const PhysParams& p,
                                       int n_max)
{
    if (t.size() != nbb.size()) throw std::invalid_argument("modified_inversion: size mismatch");
    std::vector<double> w(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) w[k] = dqed::modified_inversion(t[k], nbb[k], p, n_max);
    return w;
}

} // namespace serial

namespace parallel {

std::vector<double> standard_inversion(std::span<const double> t, const PhysParams& p, int n_max)
{
    const auto weight = poisson_weights(p.mean_photons(), n_max);
    const std::size_t terms = weight.size();
    std::vector<double> freq(terms), amp(terms);
    const double om2 = p.coupling * p.coupling;
    for (std::size_t n = 0; n < terms; ++n) {
        freq[n] = rabi_frequency(static_cast<int>(n), p);
        amp[n] = 2.0 * om2 * static_cast<double>(n + 1) / (freq[n] * freq[n]);
    }

    std::vector<double> w(t.size());
    const auto count = static_cast<std::ptrdiff_t>(t.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        const double tk = t[static_cast<std::size_t>(k)];
        double sum = 0.0;
        for (std::size_t n = 0; n < terms; ++n) {
            const double s = std::sin(freq[n] * tk);
            sum += weight[n] * (1.0 - amp[n] * s * s);
        }
        w[static_cast<std::size_t>(k)] = sum;
    }
    return w;
}

std::vector<double> modified_inversion(std::span<const double> t, std::span<const double> nbb, const PhysParams& p,
                                       int n_max)
{
    if (t.size() != nbb.size()) throw std::invalid_argument("modified_inversion: size mismatch");
    const auto weight = poisson_weights(p.mean_photons(), n_max);
    const std::size_t terms = weight.size();
    const double om = p.coupling;
    const double kappa = p.kappa();
    const double base = kappa * kappa;

    std::vector<double> w(t.size());
    const auto count = static_cast<std::ptrdiff_t>(t.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        const auto i = static_cast<std::size_t>(k);
        const double tk = t[i];
        const double x = nbb[i];
        double sum = 0.0;
        for (std::size_t n = 0; n < terms; ++n) {
            const double occ = x + static_cast<double>(n) + 1.0;
            const double f2 = om * (base + occ);
            const double f = std::sqrt(f2);
            const double s = std::sin(f * tk);
            sum += weight[n] * (1.0 - 2.0 * om * om * std::sqrt(occ) * s * s / f2);
        }
        w[i] = sum;
    }
    return w;
}

} // namespace parallel

} // namespace dqed
