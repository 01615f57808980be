#pragma once

#include <span>
#include <vector>

#include "dqed/darboux.hpp"
#include "dqed/jc_model.hpp"

namespace dqed {

/// Classical occupation b[1]^dagger b[1] = |2 beta - b|^2 sampled on a grid.
class ModifiedDrive {
public:
    /// Throws std::invalid_argument on size mismatch or a negative entry.
    ModifiedDrive(std::vector<double> t, std::vector<double> nbb);

    std::span<const double> t() const noexcept { return t_; }
    std::span<const double> nbb() const noexcept { return nbb_; }
    std::size_t size() const noexcept { return t_.size(); }

    /// nbb = 0 for t < t_on.
    ModifiedDrive switched_on(double t_on) const;
    ModifiedDrive scaled(double factor) const;

private:
    std::vector<double> t_;
    std::vector<double> nbb_;
};

ModifiedDrive drive_from_solution(const DarbouxSolution& sol);

/// Omega_n^m = sqrt(Omega (kappa^2 + nbb + n + 1)).
double modified_rabi_frequency(int n, double nbb, const PhysParams& p);

/// Modified inversion with amplitude factor 2 Omega^2 sqrt(nbb + n + 1).
/// Unlike the standard formula it is not normalised to |W| <= 1.
double modified_inversion(double t, double nbb, const PhysParams& p, int n_max);

/// 1 + 2 Omega^2 max_n sqrt(nbb + n + 1) / (Omega_n^m)^2, the bound on |W|.
double modified_inversion_bound(double nbb, const PhysParams& p, int n_max);

} // namespace dqed
