#include "dqed/complex_math.hpp"

#include <cmath>

namespace dqed {

Complex csqrt(Complex z) noexcept
{
    const double a = z.real();
    const double b = z.imag();
    if (b == 0.0) {
        return a >= 0.0 ? Complex{std::sqrt(a), 0.0} : Complex{0.0, std::sqrt(-a)};
    }
    const double r = std::hypot(a, b);
    const double sgn = b > 0.0 ? 1.0 : -1.0;
    if (a >= 0.0) {
        const double p = std::sqrt(0.5 * (r + a));
        return {p, b / (2.0 * p)};
    }
    const double q = std::sqrt(0.5 * (r - a));
    return {std::abs(b) / (2.0 * q), sgn * q};
}

} // namespace dqed
