#pragma once

#include <complex>

namespace dqed {

using Complex = std::complex<double>;

inline constexpr Complex I{0.0, 1.0};

inline bool is_finite(Complex z) noexcept
{
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Principal square root p + iq of z = a + ib with
///   p = sqrt((|z| + a) / 2),  q = sgn(b) sqrt((|z| - a) / 2).
/// The smaller of p, |q| is recovered from p|q| = |b|/2 so that the result
/// keeps full relative accuracy next to the negative real axis.
/// For b == 0 the root is sqrt(a) (a >= 0) or i sqrt(-a) (a < 0), which is
/// the b -> 0+ limit.
Complex csqrt(Complex z) noexcept;

} // namespace dqed
