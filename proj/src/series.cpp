#include "dqed/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "dqed/errors.hpp"

namespace dqed {

namespace {

bool all_finite(std::span<const Complex> c)
{
    return std::all_of(c.begin(), c.end(), [](Complex z) { return is_finite(z); });
}

// Solves A x = rhs in place by Gaussian elimination with full pivoting.
// Returns false when a pivot falls below `tol`.
bool solve_full_pivot(std::vector<Complex>& a, std::vector<Complex>& rhs, std::size_t n, double tol,
                      std::vector<Complex>& x)
{
    std::vector<std::size_t> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = i;
    auto at = [&](std::size_t r, std::size_t c) -> Complex& { return a[r * n + c]; };

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pr = k, pc = k;
        double best = -1.0;
        for (std::size_t r = k; r < n; ++r) {
            for (std::size_t c = k; c < n; ++c) {
                const double v = std::abs(at(r, c));
                if (v > best) {
                    best = v;
                    pr = r;
                    pc = c;
                }
            }
        }
        if (!(best > tol)) return false;
        if (pr != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(at(k, c), at(pr, c));
            std::swap(rhs[k], rhs[pr]);
        }
        if (pc != k) {
            for (std::size_t r = 0; r < n; ++r) std::swap(at(r, k), at(r, pc));
            std::swap(col[k], col[pc]);
        }
        for (std::size_t r = k + 1; r < n; ++r) {
            const Complex f = at(r, k) / at(k, k);
            if (f == Complex{}) continue;
            for (std::size_t c = k; c < n; ++c) at(r, c) -= f * at(k, c);
            rhs[r] -= f * rhs[k];
        }
    }

    std::vector<Complex> y(n);
    for (std::size_t k = n; k-- > 0;) {
        Complex s = rhs[k];
        for (std::size_t c = k + 1; c < n; ++c) s -= at(k, c) * y[c];
        y[k] = s / at(k, k);
    }
    x.assign(n, Complex{});
    for (std::size_t k = 0; k < n; ++k) x[col[k]] = y[k];
    return true;
}

} // namespace

// ---------------------------------------------------------------------------
// TruncSeries

TruncSeries::TruncSeries(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs))
{
    if (coeffs_.empty()) throw std::invalid_argument("TruncSeries: empty coefficient list");
    if (!all_finite(coeffs_)) throw std::invalid_argument("TruncSeries: non-finite coefficient");
}

TruncSeries TruncSeries::zero(std::size_t order)
{
    return TruncSeries(std::vector<Complex>(order + 1));
}

Complex TruncSeries::evaluate(Complex x) const noexcept
{
    return poly::evaluate(coeffs_, x);
}

TruncSeries TruncSeries::truncated(std::size_t order) const
{
    std::vector<Complex> c(order + 1);
    for (std::size_t n = 0; n <= order && n < coeffs_.size(); ++n) c[n] = coeffs_[n];
    return TruncSeries(std::move(c));
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b)
{
    const std::size_t k = std::min(a.order(), b.order());
    std::vector<Complex> c(k + 1);
    for (std::size_t n = 0; n <= k; ++n) c[n] = a[n] + b[n];
    return TruncSeries(std::move(c));
}

TruncSeries series_mul(const TruncSeries& a, const TruncSeries& b)
{
    const std::size_t k = std::min(a.order(), b.order());
    std::vector<Complex> c(k + 1);
    for (std::size_t n = 0; n <= k; ++n) {
        Complex s{};
        for (std::size_t i = 0; i <= n; ++i) s += a[i] * b[n - i];
        c[n] = s;
    }
    return TruncSeries(std::move(c));
}

TruncSeries series_laplace(const TruncSeries& s)
{
    std::vector<Complex> c(s.order() + 2);
    double fact = 1.0;
    for (std::size_t n = 0; n <= s.order(); ++n) {
        if (n > 0) fact *= static_cast<double>(n);
        c[n + 1] = s[n] * fact;
    }
    return TruncSeries(std::move(c));
}

// ---------------------------------------------------------------------------
// Rational functions

PadeRational::PadeRational(std::vector<Complex> num, std::vector<Complex> den_tail) : num_(std::move(num))
{
    if (num_.empty()) throw std::invalid_argument("PadeRational: empty numerator");
    den_.reserve(den_tail.size() + 1);
    den_.push_back(Complex{1.0, 0.0});
    den_.insert(den_.end(), den_tail.begin(), den_tail.end());
}

Complex PadeRational::evaluate(Complex x) const noexcept
{
    return poly::evaluate(num_, x) / poly::evaluate(den_, x);
}

Complex RationalFunction::evaluate(Complex x) const noexcept
{
    return poly::evaluate(num, x) / poly::evaluate(den, x);
}

PadeRational pade(const TruncSeries& series, std::size_t M, std::size_t N)
{
    if (M + N > series.order()) {
        throw std::invalid_argument("pade: M + N = " + std::to_string(M + N) + " exceeds series order " +
                                    std::to_string(series.order()));
    }
    auto c = [&](std::ptrdiff_t i) -> Complex { return i < 0 ? Complex{} : series[static_cast<std::size_t>(i)]; };

    std::vector<Complex> b(N);
    if (N > 0) {
        std::vector<Complex> a(N * N);
        std::vector<Complex> rhs(N);
        double norm2 = 0.0;
        for (std::size_t j = 1; j <= N; ++j) {
            for (std::size_t k = 1; k <= N; ++k) {
                const Complex v = c(static_cast<std::ptrdiff_t>(M + j) - static_cast<std::ptrdiff_t>(k));
                a[(j - 1) * N + (k - 1)] = v;
                norm2 += std::norm(v);
            }
            rhs[j - 1] = -series[M + j];
        }
        const double tol = 1e-12 * std::sqrt(norm2);
        if (!solve_full_pivot(a, rhs, N, tol, b)) {
            throw SingularPadeSystem("pade: Hankel system is rank deficient for [" + std::to_string(M) + "/" +
                                     std::to_string(N) + "]");
        }
    }

    std::vector<Complex> num(M + 1);
    for (std::size_t i = 0; i <= M; ++i) {
        Complex s = series[i];
        for (std::size_t k = 1; k <= std::min(i, N); ++k) s += b[k - 1] * series[i - k];
        num[i] = s;
    }
    return PadeRational(std::move(num), std::move(b));
}

RationalFunction back_substitute(const PadeRational& r)
{
    const std::size_t m = r.num_degree();
    const std::size_t n = r.den_degree();
    const std::size_t d = std::max(m, n);
    RationalFunction out{std::vector<Complex>(d + 1), std::vector<Complex>(d + 1)};
    for (std::size_t i = 0; i <= m; ++i) out.num[d - i] = r.numerator()[i];
    for (std::size_t j = 0; j <= n; ++j) out.den[d - j] = r.denominator()[j];
    return out;
}

// ---------------------------------------------------------------------------
// ExpPolySum

ExpPolySum::ExpPolySum(std::vector<ExpPolyTerm> terms)
{
    terms_.reserve(terms.size());
    for (const auto& t : terms) {
        auto it = std::find_if(terms_.begin(), terms_.end(),
                               [&](const ExpPolyTerm& u) { return u.rate == t.rate && u.power == t.power; });
        if (it == terms_.end()) {
            terms_.push_back(t);
        } else {
            it->c += t.c;
        }
    }
}

Complex ExpPolySum::evaluate(double t) const noexcept
{
    Complex s{};
    for (const auto& term : terms_) s += term.c * std::pow(t, static_cast<int>(term.power)) * std::exp(term.rate * t);
    return s;
}

Complex ExpPolySum::derivative(double t) const noexcept
{
    Complex s{};
    for (const auto& term : terms_) {
        const Complex e = std::exp(term.rate * t);
        const int k = static_cast<int>(term.power);
        Complex d = term.rate * std::pow(t, k);
        if (k > 0) d += static_cast<double>(k) * std::pow(t, k - 1);
        s += term.c * d * e;
    }
    return s;
}

TruncSeries ExpPolySum::taylor(std::size_t order) const
{
    std::vector<Complex> c(order + 1);
    for (const auto& term : terms_) {
        // t^k e^{rt} = sum_j r^j / j! t^(k+j)
        Complex rj{1.0, 0.0};
        for (std::size_t n = term.power, j = 0; n <= order; ++n, ++j) {
            if (j > 0) rj *= term.rate / static_cast<double>(j);
            c[n] += term.c * rj;
        }
    }
    return TruncSeries(std::move(c));
}

ExpPolySum pade_inverse_laplace(const RationalFunction& r)
{
    const auto num = poly::trimmed(r.num);
    const auto den = poly::trimmed(r.den);
    if (den.size() == 1 && den[0] == Complex{}) throw std::invalid_argument("pade_inverse_laplace: zero denominator");
    if (num.size() == 1 && num[0] == Complex{}) return ExpPolySum{};
    if (num.size() >= den.size()) {
        throw ImproperRational("pade_inverse_laplace: numerator degree " + std::to_string(num.size() - 1) +
                               " >= denominator degree " + std::to_string(den.size() - 1));
    }

    struct Pole {
        Complex p;
        Complex sum;
        unsigned mult;
    };
    std::vector<Pole> poles;
    for (const Complex z : poly::roots(den)) {
        auto it = std::find_if(poles.begin(), poles.end(), [&](const Pole& q) {
            return std::abs(z - q.p) <= 1e-8 * std::max(1.0, std::abs(q.p));
        });
        if (it == poles.end()) {
            poles.push_back({z, z, 1});
        } else {
            it->sum += z;
            ++it->mult;
            it->p = it->sum / static_cast<double>(it->mult);
        }
    }

    const Complex lead = den.back();
    std::vector<ExpPolyTerm> terms;
    for (std::size_t j = 0; j < poles.size(); ++j) {
        const Complex p = poles[j].p;
        const unsigned m = poles[j].mult;
        // num(p + y) / (lead * prod_{l != j} (y + p - p_l)^m_l) expanded to order m - 1
        std::vector<Complex> q{lead};
        for (std::size_t l = 0; l < poles.size(); ++l) {
            if (l == j) continue;
            const std::vector<Complex> lin{p - poles[l].p, Complex{1.0, 0.0}};
            for (unsigned e = 0; e < poles[l].mult; ++e) q = poly::multiply(q, lin);
        }
        auto ns = poly::shift(num, p);
        ns.resize(std::max<std::size_t>(ns.size(), m));
        q.resize(std::max<std::size_t>(q.size(), m));
        std::vector<Complex> h(m);
        for (unsigned i = 0; i < m; ++i) {
            Complex s = ns[i];
            for (unsigned k = 1; k <= i; ++k) s -= q[k] * h[i - k];
            h[i] = s / q[0];
        }
        // h[i] multiplies 1/(s-p)^(m-i)  ->  t^(m-i-1) e^{pt} / (m-i-1)!
        for (unsigned i = 0; i < m; ++i) {
            const unsigned k = m - i;
            double fact = 1.0;
            for (unsigned f = 2; f < k; ++f) fact *= f;
            terms.push_back({h[i] / fact, p, k - 1});
        }
    }
    return ExpPolySum(std::move(terms));
}

ExpPolySum laplace_pade_resum(const TruncSeries& series, std::size_t M, std::size_t N)
{
    if (M + N > series.order() + 1) {
        throw std::invalid_argument("laplace_pade_resum: M + N must not exceed K + 1");
    }
    const auto c = series.coeffs();
    if (std::all_of(c.begin(), c.end(), [](Complex z) { return z == Complex{}; })) return ExpPolySum{};
    const auto image = series_laplace(series);
    const auto approx = pade(image, M, N);
    return pade_inverse_laplace(back_substitute(approx));
}

// ---------------------------------------------------------------------------
// Polynomial helpers

namespace poly {

Complex evaluate(std::span<const Complex> c, Complex x) noexcept
{
    Complex s{};
    for (std::size_t i = c.size(); i-- > 0;) s = s * x + c[i];
    return s;
}

std::vector<Complex> multiply(std::span<const Complex> a, std::span<const Complex> b)
{
    if (a.empty() || b.empty()) return {};
    std::vector<Complex> c(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

std::vector<Complex> shift(std::span<const Complex> p, Complex x0)
{
    std::vector<Complex> a(p.begin(), p.end());
    const std::size_t n = a.empty() ? 0 : a.size() - 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = n; j-- > i;) a[j] += x0 * a[j + 1];
    return a;
}

std::vector<Complex> trimmed(std::span<const Complex> p)
{
    std::size_t n = p.size();
    while (n > 1 && p[n - 1] == Complex{}) --n;
    std::vector<Complex> out(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(std::max<std::size_t>(n, 1)));
    if (out.empty()) out.push_back(Complex{});
    return out;
}

std::vector<Complex> roots(std::span<const Complex> p)
{
    const auto c = trimmed(p);
    const std::size_t d = c.size() - 1;
    if (d == 0) return {};
    if (d == 1) return {-c[0] / c[1]};

    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 1; i < d; ++i) comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    for (std::size_t i = 0; i < d; ++i) comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d - 1)) = -c[i] / c[d];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    std::vector<Complex> z(d);
    for (std::size_t i = 0; i < d; ++i) z[i] = es.eigenvalues()(static_cast<Eigen::Index>(i));

    // Newton polish; a step is kept only if it lowers |p(z)|.
    std::vector<Complex> dc(d);
    for (std::size_t i = 1; i <= d; ++i) dc[i - 1] = c[i] * static_cast<double>(i);
    for (auto& zi : z) {
        for (int it = 0; it < 3; ++it) {
            const Complex f = evaluate(c, zi);
            const Complex df = evaluate(dc, zi);
            if (df == Complex{}) break;
            const Complex cand = zi - f / df;
            if (std::abs(evaluate(c, cand)) < std::abs(f)) {
                zi = cand;
            } else {
                break;
            }
        }
    }
    std::sort(z.begin(), z.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return z;
}

} // namespace poly

} // namespace dqed
