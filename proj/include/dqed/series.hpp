#pragma once

// Truncated power series and the Laplace -> Pade -> inverse-Laplace
// resummation pipeline.
//
// Conventions: every coefficient vector is ascending, c[n] multiplies x^n.

#include <cstddef>
#include <span>
#include <vector>

#include "dqed/complex_math.hpp"

namespace dqed {

/// c_0 + c_1 x + ... + c_K x^K with complex coefficients.
class TruncSeries {
public:
    /// Throws std::invalid_argument on an empty or non-finite coefficient list.
    explicit TruncSeries(std::vector<Complex> coeffs);

    static TruncSeries zero(std::size_t order);

    std::size_t order() const noexcept { return coeffs_.size() - 1; }
    std::span<const Complex> coeffs() const noexcept { return coeffs_; }
    Complex operator[](std::size_t n) const { return coeffs_.at(n); }

    Complex evaluate(Complex x) const noexcept;

    /// Drops every coefficient above `order` (or zero-pads up to it).
    TruncSeries truncated(std::size_t order) const;

private:
    std::vector<Complex> coeffs_;
};

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);

/// Cauchy product truncated at min(K_a, K_b).
TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b);

/// Term-wise Laplace image c_n t^n -> c_n n! u^(n+1), with u = 1/s.
/// The result has order K + 1 and a zero constant term.
TruncSeries series_laplace(const TruncSeries& s);

/// [M/N] rational approximant (a_0 + ... + a_M x^M) / (1 + b_1 x + ... + b_N x^N).
class PadeRational {
public:
    /// `den_tail` holds b_1..b_N; b_0 = 1 is implicit.
    PadeRational(std::vector<Complex> num, std::vector<Complex> den_tail);

    std::size_t num_degree() const noexcept { return num_.size() - 1; }
    std::size_t den_degree() const noexcept { return den_.size() - 1; }

    std::span<const Complex> numerator() const noexcept { return num_; }
    /// Full denominator b_0..b_N, b_0 == 1.
    std::span<const Complex> denominator() const noexcept { return den_; }

    Complex evaluate(Complex x) const noexcept;

private:
    std::vector<Complex> num_;
    std::vector<Complex> den_;
};

/// Generic ratio of polynomials, used for the s-domain image.
struct RationalFunction {
    std::vector<Complex> num;
    std::vector<Complex> den;

    Complex evaluate(Complex x) const noexcept;
};

/// The Pade system is solved by full-pivot elimination with rank tolerance
/// 1e-12 times the Frobenius norm of the Hankel matrix.
/// Throws SingularPadeSystem when the system is rank deficient and
/// std::invalid_argument when M + N exceeds the series order.
PadeRational pade(const TruncSeries& series, std::size_t M, std::size_t N);

/// Substitutes u = 1/s into an approximant in u and clears denominators.
RationalFunction back_substitute(const PadeRational& r);

/// One term c t^k e^{rt}.
struct ExpPolyTerm {
    Complex c;
    Complex rate;
    unsigned power = 0;
};

/// Sum of c t^k e^{rt}. Terms sharing an identical (rate, power) are merged
/// on construction.
class ExpPolySum {
public:
    ExpPolySum() = default;
    explicit ExpPolySum(std::vector<ExpPolyTerm> terms);

    std::span<const ExpPolyTerm> terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }

    Complex evaluate(double t) const noexcept;
    Complex derivative(double t) const noexcept;

    /// Taylor coefficients about t = 0 through t^order.
    TruncSeries taylor(std::size_t order) const;

private:
    std::vector<ExpPolyTerm> terms_;
};

/// Partial fractions over the complex roots of the denominator; a pole of
/// order k contributes t^(k-1) e^{pt} / (k-1)!. Roots closer than 1e-8
/// (relative) are merged into one repeated pole.
/// Throws ImproperRational when deg(num) >= deg(den).
ExpPolySum pade_inverse_laplace(const RationalFunction& r);

/// series_laplace -> pade in u -> u = 1/s -> pade_inverse_laplace.
/// Requires M + N <= K + 1.
ExpPolySum laplace_pade_resum(const TruncSeries& series, std::size_t M, std::size_t N);

namespace poly {

// Ascending-coefficient complex polynomial helpers.

Complex evaluate(std::span<const Complex> c, Complex x) noexcept;
std::vector<Complex> multiply(std::span<const Complex> a, std::span<const Complex> b);
/// Coefficients of p(x0 + y) in powers of y.
std::vector<Complex> shift(std::span<const Complex> p, Complex x0);
/// Strips exactly-zero leading coefficients (keeps at least one entry).
std::vector<Complex> trimmed(std::span<const Complex> p);
/// Roots from the eigenvalues of the companion matrix.
std::vector<Complex> roots(std::span<const Complex> p);

} // namespace poly

} // namespace dqed
