#include "dqed/darboux.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dqed {

namespace {

using Mat = Eigen::Matrix2cd;

Mat pauli(Sigma s)
{
    Mat m;
    switch (s) {
    case Sigma::One:
        m << 0.0, 1.0, 1.0, 0.0;
        break;
    case Sigma::Two:
        m << Complex{}, -I, I, Complex{};
        break;
    case Sigma::Three:
        m << 1.0, 0.0, 0.0, -1.0;
        break;
    }
    return m;
}

// sigma+ x + sigma- y
Mat raise_lower(Complex x, Complex y)
{
    Mat m;
    m << Complex{}, x, y, Complex{};
    return m;
}

} // namespace

Sigma sigma_from_index(int index)
{
    if (index < 1 || index > 3) throw std::invalid_argument("sigma index must be 1, 2 or 3, got " + std::to_string(index));
    return static_cast<Sigma>(index);
}

Complex classical_field(double t, const PhysParams& p)
{
    return p.b0 * std::exp(-I * (p.field_freq * t));
}

Complex classical_field_rate(double t, const PhysParams& p)
{
    return -I * p.field_freq * classical_field(t, p);
}

Complex transform_field(double t, Complex beta, const PhysParams& p)
{
    return 2.0 * beta - classical_field(t, p);
}

VectorPotential vector_potential(Complex field, const PhysParams& p)
{
    const double h = p.hbar_coupling();
    const Complex fc = std::conj(field);
    return {-h * (field - fc) / 2.0, -I * h * (field + fc) / 2.0};
}

double potential_magnitude(double t, Complex beta, const PhysParams& p, PotentialScale scale)
{
    const double b0 = p.b0;
    const Complex v = 4.0 * beta * beta - 4.0 * beta * b0 * std::cos(p.field_freq * t) + b0 * b0;
    double m = std::abs(v);
    if (scale == PotentialScale::HbarCouplingSquared) m *= p.hbar_coupling() * p.hbar_coupling();
    return m;
}

Eigen::Matrix2cd intertwine_residual_matrix(double t, Complex alpha, Complex beta, Complex dalpha, Complex dbeta,
                                            Sigma sigma, const PhysParams& p)
{
    const double h = p.hbar_coupling();
    const Complex b = classical_field(t, p);
    const Complex db = classical_field_rate(t, p);
    const Complex b1 = 2.0 * beta - b;

    const Mat id = Mat::Identity();
    const Mat s = pauli(sigma);
    const Mat sz = pauli(Sigma::Three);
    const Mat B = alpha * id + I * (b - beta) * s;
    const Mat dB = dalpha * id + I * (db - dbeta) * s;

    return I * sz * dB + h * raise_lower(b1, std::conj(b1)) * B - h * B * raise_lower(b, std::conj(b)) -
           h * raise_lower(db, std::conj(db));
}

double intertwine_residual(double t, Complex alpha, Complex beta, Complex dalpha, Complex dbeta, Sigma sigma,
                           const PhysParams& p)
{
    return intertwine_residual_matrix(t, alpha, beta, dalpha, dbeta, sigma, p).norm();
}

DarbouxSolution::DarbouxSolution(Sigma sigma, std::vector<double> t, std::vector<Complex> alpha,
                                 std::vector<Complex> beta, std::vector<Complex> dalpha, std::vector<Complex> dbeta,
                                 const PhysParams& p, PotentialScale scale)
    : sigma_(sigma), t_(std::move(t)), alpha_(std::move(alpha)), beta_(std::move(beta)), dalpha_(std::move(dalpha)),
      dbeta_(std::move(dbeta))
{
    const std::size_t n = t_.size();
    if (alpha_.size() != n || beta_.size() != n || dalpha_.size() != n || dbeta_.size() != n) {
        throw std::invalid_argument("DarbouxSolution: trajectory lengths differ");
    }
    b1_.resize(n);
    vmag_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        b1_[k] = transform_field(t_[k], beta_[k], p);
        vmag_[k] = potential_magnitude(t_[k], beta_[k], p, scale);
    }
}

} // namespace dqed
