#include "dqed/hpm.hpp"

#include <cmath>
#include <stdexcept>

#include "dqed/errors.hpp"

namespace dqed {

// ---------------------------------------------------------------------------
// HarmonicSeries

HarmonicSeries HarmonicSeries::constant(double omega, Complex c)
{
    HarmonicSeries h(omega);
    h.add_term(0, 0, c);
    return h;
}

HarmonicSeries HarmonicSeries::harmonic(double omega, int m, Complex c)
{
    HarmonicSeries h(omega);
    h.add_term(m, 0, c);
    return h;
}

void HarmonicSeries::add_term(int m, unsigned k, Complex c)
{
    if (c == Complex{}) return;
    auto [it, inserted] = terms_.try_emplace({m, k}, c);
    if (!inserted) {
        it->second += c;
        if (it->second == Complex{}) terms_.erase(it);
    }
}

HarmonicSeries& HarmonicSeries::operator+=(const HarmonicSeries& o)
{
    for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, c);
    return *this;
}

HarmonicSeries& HarmonicSeries::operator*=(Complex s)
{
    if (s == Complex{}) {
        terms_.clear();
        return *this;
    }
    for (auto& [key, c] : terms_) c *= s;
    return *this;
}

HarmonicSeries operator*(const HarmonicSeries& a, const HarmonicSeries& b)
{
    HarmonicSeries out(a.omega());
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms()) out.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return out;
}

HarmonicSeries HarmonicSeries::integral() const
{
    HarmonicSeries out(omega_);
    for (const auto& [key, c] : terms_) {
        const auto [m, k] = key;
        if (m == 0) {
            out.add_term(0, k + 1, c / static_cast<double>(k + 1));
            continue;
        }
        // int_0^t s^k e^{ls} ds = e^{lt} sum_j (-1)^j k!/(k-j)! t^(k-j) / l^(j+1) - (-1)^k k! / l^(k+1)
        const Complex lambda = I * (static_cast<double>(m) * omega_);
        Complex coef = c / lambda; // j = 0
        for (unsigned j = 0; j <= k; ++j) {
            out.add_term(m, k - j, coef);
            if (j < k) coef *= -static_cast<double>(k - j) / lambda;
        }
        // coef now holds (-1)^k k! c / l^(k+1)
        out.add_term(0, 0, -coef);
    }
    return out;
}

HarmonicSeries HarmonicSeries::derivative() const
{
    HarmonicSeries out(omega_);
    for (const auto& [key, c] : terms_) {
        const auto [m, k] = key;
        if (m != 0) out.add_term(m, k, c * I * (static_cast<double>(m) * omega_));
        if (k > 0) out.add_term(m, k - 1, c * static_cast<double>(k));
    }
    return out;
}

Complex HarmonicSeries::evaluate(double t) const noexcept
{
    Complex s{};
    for (const auto& [key, c] : terms_) {
        s += c * std::pow(t, static_cast<int>(key.second)) * std::exp(I * (static_cast<double>(key.first) * omega_ * t));
    }
    return s;
}

TruncSeries HarmonicSeries::taylor(std::size_t order) const
{
    return to_exp_poly().taylor(order);
}

ExpPolySum HarmonicSeries::to_exp_poly() const
{
    std::vector<ExpPolyTerm> v;
    v.reserve(terms_.size());
    for (const auto& [key, c] : terms_) v.push_back({c, I * (static_cast<double>(key.first) * omega_), key.second});
    return ExpPolySum(std::move(v));
}

// ---------------------------------------------------------------------------
// Riccati pair

RiccatiState sigma1_rhs(double t, const RiccatiState& s, const PhysParams& p)
{
    const double h = p.hbar_coupling();
    const double w = p.field_freq;
    const double b0 = p.b0;
    const Complex ep = std::exp(I * (w * t));
    const Complex em = std::exp(-I * (w * t));
    const Complex da = 2.0 * h * (s.beta * s.beta - s.beta * (ep + b0 * em) - b0);
    const Complex db = I * w * b0 * em * (h - 1.0) + 2.0 * h * s.alpha * (s.beta - std::cos(w * t));
    return {da, db};
}

RiccatiState sigma1_initial_state(const PhysParams& p)
{
    if (p.b0 == 1.0) throw DegenerateAmplitude("sigma-1 initial condition is singular at b0 = 1");
    const double h = p.hbar_coupling();
    const Complex a0 = I * p.field_freq * p.b0 * (1.0 - h) / (2.0 * h * (p.b0 - 1.0));
    return {a0, Complex{p.b0, 0.0}};
}

// ---------------------------------------------------------------------------
// HPM

RiccatiState HpmExpansion::evaluate(double t) const
{
    RiccatiState s{};
    for (std::size_t k = 0; k <= order; ++k) {
        s.alpha += alpha_exact[k].evaluate(t);
        s.beta += beta_exact[k].evaluate(t);
    }
    return s;
}

RiccatiState HpmExpansion::derivative(double t) const
{
    RiccatiState s{};
    for (std::size_t k = 0; k <= order; ++k) {
        s.alpha += alpha_exact[k].derivative().evaluate(t);
        s.beta += beta_exact[k].derivative().evaluate(t);
    }
    return s;
}

TruncSeries HpmExpansion::summed_alpha() const
{
    TruncSeries s = TruncSeries::zero(series_order);
    for (const auto& a : alpha_orders) s = s + a;
    return s;
}

TruncSeries HpmExpansion::summed_beta() const
{
    TruncSeries s = TruncSeries::zero(series_order);
    for (const auto& b : beta_orders) s = s + b;
    return s;
}

HpmExpansion hpm_solve_sigma1(const PhysParams& p, std::size_t P, std::size_t K)
{
    if (P < 1) throw std::invalid_argument("hpm_solve_sigma1: order must be at least 1");
    if (p.field_freq == 0.0) throw std::invalid_argument("hpm_solve_sigma1: field frequency must be non-zero");
    const RiccatiState ic = sigma1_initial_state(p);
    const double w = p.field_freq;
    const double h = p.hbar_coupling();
    const double b0 = p.b0;

    HpmExpansion out;
    out.order = P;
    out.series_order = K == 0 ? P : K;

    // Drive terms: e^{iwt} + b0 e^{-iwt} and cos(wt).
    HarmonicSeries drive(w);
    drive.add_term(1, 0, 1.0);
    drive.add_term(-1, 0, b0);
    HarmonicSeries cosine(w);
    cosine.add_term(1, 0, 0.5);
    cosine.add_term(-1, 0, 0.5);

    out.alpha_exact.push_back(HarmonicSeries::constant(w, ic.alpha));
    out.beta_exact.push_back(HarmonicSeries::constant(w, ic.beta));

    for (std::size_t k = 1; k <= P; ++k) {
        const auto& a = out.alpha_exact;
        const auto& b = out.beta_exact;
        // p^k: derivatives are built from orders up to k-1.
        HarmonicSeries beta_sq(w), alpha_beta(w);
        for (std::size_t i = 0; i + 1 <= k; ++i) {
            beta_sq += b[i] * b[k - 1 - i];
            alpha_beta += a[i] * b[k - 1 - i];
        }
        HarmonicSeries da = beta_sq + (b[k - 1] * drive) * Complex{-1.0, 0.0};
        HarmonicSeries db = alpha_beta + (a[k - 1] * cosine) * Complex{-1.0, 0.0};
        if (k == 1) da.add_term(0, 0, -b0);
        da *= 2.0 * h;
        db *= 2.0 * h;
        if (k == 1) db.add_term(-1, 0, I * w * b0 * (h - 1.0));

        out.alpha_exact.push_back(da.integral());
        out.beta_exact.push_back(db.integral());
    }

    for (std::size_t k = 0; k <= P; ++k) {
        out.alpha_orders.push_back(out.alpha_exact[k].taylor(out.series_order));
        out.beta_orders.push_back(out.beta_exact[k].taylor(out.series_order));
    }
    return out;
}

ResummedSigma1 resum_sigma1(const HpmExpansion& h, std::size_t M, std::size_t N)
{
    if (h.series_order + 1 < M + N) {
        throw std::invalid_argument("resum_sigma1: series order too low for the requested Pade orders");
    }
    return {laplace_pade_resum(h.summed_alpha(), M, N), laplace_pade_resum(h.summed_beta(), M, N)};
}

RiccatiState closed_form_sigma1(double t, const PhysParams& p)
{
    if (p.b0 == 1.0) throw DegenerateAmplitude("sigma-1 closed form is singular at b0 = 1");
    const double b0 = p.b0;
    const double w = p.field_freq;
    const double hO = p.hbar_coupling();
    const double hO2 = p.hbar * p.coupling * p.coupling;
    const double tw = t * w;

    const Complex alpha =
        (1.0 / 12.0) * (b0 - b0 * b0) * hO *
        (3.0 * I * w * (4.0 * I * tw + tw * tw - 2.0) * (hO - 1.0) +
         4.0 * hO2 * (b0 - 1.0) * (b0 - 1.0) * t * (9.0 * I * tw + tw * tw - 12.0));

    const Complex em = std::exp(-I * tw);
    const Complex ep = std::exp(I * tw);
    const Complex num = 2.0 * I * (2.0 * b0 - 1.0) * (hO - 1.0) / w - I * (3.0 * b0 - 2.0) * em * (hO - 1.0) / w -
                        I * b0 * ep * (hO - 1.0) / w - I * b0 * b0 * t * t * w * (hO - 1.0) +
                        2.0 * (b0 - 1.0) * t * (b0 + hO - 1.0);
    const Complex beta = num / (2.0 * (b0 - 1.0));
    return {alpha, beta};
}

} // namespace dqed
