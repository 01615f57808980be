#include "dqed/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dqed/complex_math.hpp"

namespace dqed {

ModifiedDrive::ModifiedDrive(std::vector<double> t, std::vector<double> nbb) : t_(std::move(t)), nbb_(std::move(nbb))
{
    if (t_.size() != nbb_.size()) throw std::invalid_argument("ModifiedDrive: size mismatch");
    if (std::any_of(nbb_.begin(), nbb_.end(), [](double v) { return !(v >= 0.0); })) {
        throw std::invalid_argument("ModifiedDrive: occupation must be non-negative");
    }
}

ModifiedDrive ModifiedDrive::switched_on(double t_on) const
{
    auto nbb = nbb_;
    for (std::size_t k = 0; k < t_.size(); ++k)
        if (t_[k] < t_on) nbb[k] = 0.0;
    return ModifiedDrive(t_, std::move(nbb));
}

ModifiedDrive ModifiedDrive::scaled(double factor) const
{
    auto nbb = nbb_;
    for (auto& v : nbb) v *= factor;
    return ModifiedDrive(t_, std::move(nbb));
}

ModifiedDrive drive_from_solution(const DarbouxSolution& sol)
{
    std::vector<double> nbb(sol.size());
    for (std::size_t k = 0; k < sol.size(); ++k) nbb[k] = std::norm(sol.b1()[k]);
    return ModifiedDrive(std::vector<double>(sol.t().begin(), sol.t().end()), std::move(nbb));
}

double modified_rabi_frequency(int n, double nbb, const PhysParams& p)
{
    const double k = p.kappa();
    return std::sqrt(p.coupling * (k * k + nbb + n + 1));
}

double modified_inversion(double t, double nbb, const PhysParams& p, int n_max)
{
    const auto w = poisson_weights(p.mean_photons(), n_max);
    const double om2 = p.coupling * p.coupling;
    double sum = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        const double om = modified_rabi_frequency(n, nbb, p);
        const double amp = csqrt(Complex{nbb + n + 1, 0.0}).real();
        const double s = std::sin(om * t);
        sum += w[static_cast<std::size_t>(n)] * (1.0 - 2.0 * om2 * amp * s * s / (om * om));
    }
    return sum;
}

double modified_inversion_bound(double nbb, const PhysParams& p, int n_max)
{
    const double om2 = p.coupling * p.coupling;
    double m = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        const double om = modified_rabi_frequency(n, nbb, p);
        m = std::max(m, std::sqrt(nbb + n + 1) / (om * om));
    }
    return 1.0 + 2.0 * om2 * m;
}

} // namespace dqed
