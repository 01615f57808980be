#pragma once

// One-fold Darboux transformation of the classical drive in the Dirac form of
// the Rabi model. The intertwiner matrix part is
//   B = alpha_i(t) + i (b(t) - beta_i(t)) sigma_i.

#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "dqed/complex_math.hpp"
#include "dqed/jc_model.hpp"

namespace dqed {

enum class Sigma : int { One = 1, Two = 2, Three = 3 };

/// Throws std::invalid_argument unless index is 1, 2 or 3.
Sigma sigma_from_index(int index);
inline int index_of(Sigma s) noexcept { return static_cast<int>(s); }

/// Coefficients of sigma_x and sigma_y in V(t).
struct VectorPotential {
    Complex f1;
    Complex f2;

    double norm_squared() const noexcept { return std::norm(f1) + std::norm(f2); }
};

/// Whether the potential magnitude carries the (hbar Omega)^2 prefactor.
enum class PotentialScale { AsPrinted, HbarCouplingSquared };

/// b(t) = b0 e^{-i omega t}.
Complex classical_field(double t, const PhysParams& p);
/// db/dt.
Complex classical_field_rate(double t, const PhysParams& p);

/// b[1](t) = 2 beta - b(t).
Complex transform_field(double t, Complex beta, const PhysParams& p);

/// Decomposes -hbar Omega (sigma+ F - sigma- conj(F)) onto sigma_x, sigma_y.
VectorPotential vector_potential(Complex field, const PhysParams& p);
inline VectorPotential untransformed_potential(double t, const PhysParams& p)
{
    return vector_potential(classical_field(t, p), p);
}
inline VectorPotential transformed_potential(double t, Complex beta, const PhysParams& p)
{
    return vector_potential(transform_field(t, beta, p), p);
}

/// |4 beta^2 - 4 beta b0 cos(omega t) + b0^2|, optionally times (hbar Omega)^2.
double potential_magnitude(double t, Complex beta, const PhysParams& p,
                           PotentialScale scale = PotentialScale::AsPrinted);

/// Matrix residual of the intertwining relation
///   i sz dB/dt + hO (s+ b1 + s- b1*) B - hO (B s+ b + B s- b*) - hO (s+ db + s- db*),
/// with b1* the complex conjugate of b1.
Eigen::Matrix2cd intertwine_residual_matrix(double t, Complex alpha, Complex beta, Complex dalpha, Complex dbeta,
                                            Sigma sigma, const PhysParams& p);

/// Frobenius norm of intertwine_residual_matrix.
double intertwine_residual(double t, Complex alpha, Complex beta, Complex dalpha, Complex dbeta, Sigma sigma,
                           const PhysParams& p);

/// Time-gridded alpha_i, beta_i with their derivatives, the transformed field
/// b_i[1] and the potential magnitude |V_i[1]|. Immutable once built; b1 and
/// vmag are computed in the constructor.
class DarbouxSolution {
public:
    DarbouxSolution(Sigma sigma, std::vector<double> t, std::vector<Complex> alpha, std::vector<Complex> beta,
                    std::vector<Complex> dalpha, std::vector<Complex> dbeta, const PhysParams& p,
                    PotentialScale scale = PotentialScale::AsPrinted);

    Sigma sigma() const noexcept { return sigma_; }
    std::size_t size() const noexcept { return t_.size(); }
    std::span<const double> t() const noexcept { return t_; }
    std::span<const Complex> alpha() const noexcept { return alpha_; }
    std::span<const Complex> beta() const noexcept { return beta_; }
    std::span<const Complex> dalpha() const noexcept { return dalpha_; }
    std::span<const Complex> dbeta() const noexcept { return dbeta_; }
    std::span<const Complex> b1() const noexcept { return b1_; }
    std::span<const double> vmag() const noexcept { return vmag_; }

private:
    Sigma sigma_;
    std::vector<double> t_;
    std::vector<Complex> alpha_, beta_, dalpha_, dbeta_, b1_;
    std::vector<double> vmag_;
};

} // namespace dqed
