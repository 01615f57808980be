#include "dqed/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dqed/errors.hpp"

namespace dqed {

namespace {

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(std::string_view key, std::string_view v)
{
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(x)) {
        throw ConfigError(std::string(key), "expected a finite number, got '" + std::string(v) + "'");
    }
    return x;
}

std::size_t to_size(std::string_view key, std::string_view v)
{
    std::size_t x = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        throw ConfigError(std::string(key), "expected a non-negative integer, got '" + std::string(v) + "'");
    }
    return x;
}

bool to_bool(std::string_view key, std::string_view v)
{
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError(std::string(key), "expected a boolean, got '" + std::string(v) + "'");
}

} // namespace

PhysParams SimConfig::params() const
{
    return PhysParams::with_detuning(coupling, omega, detuning, hbar, b0, gamma);
}

void apply_setting(SimConfig& cfg, std::string_view key, std::string_view value)
{
    const std::string k(key);
    const auto v = trim(value);
    if (k == "coupling") cfg.coupling = to_double(k, v);
    else if (k == "omega") cfg.omega = to_double(k, v);
    else if (k == "detuning") cfg.detuning = to_double(k, v);
    else if (k == "hbar") cfg.hbar = to_double(k, v);
    else if (k == "b0") cfg.b0 = to_double(k, v);
    else if (k == "nbar") {
        const double n = to_double(k, v);
        if (n < 0.0) throw ConfigError(k, "mean photon number must be non-negative");
        cfg.gamma = Complex{std::sqrt(n), 0.0};
    }
    else if (k == "gamma_re") cfg.gamma.real(to_double(k, v));
    else if (k == "gamma_im") cfg.gamma.imag(to_double(k, v));
    else if (k == "sigma") {
        if (v == "none" || v == "0") cfg.sigma = 0;
        else if (v == "1" || v == "2" || v == "3") cfg.sigma = v[0] - '0';
        else throw ConfigError(k, "expected none, 1, 2 or 3, got '" + std::string(v) + "'");
    }
    else if (k == "t0") cfg.t0 = to_double(k, v);
    else if (k == "t1") cfg.t1 = to_double(k, v);
    else if (k == "samples") cfg.samples = to_size(k, v);
    else if (k == "hpm_order") cfg.hpm_order = to_size(k, v);
    else if (k == "pade_m") cfg.pade_m = to_size(k, v);
    else if (k == "pade_n") cfg.pade_n = to_size(k, v);
    else if (k == "sigma1_source") {
        if (v == "closed_form") cfg.sigma1_source = Sigma1Source::ClosedForm;
        else if (v == "resummed") cfg.sigma1_source = Sigma1Source::Resummed;
        else if (v == "hpm") cfg.sigma1_source = Sigma1Source::Hpm;
        else throw ConfigError(k, "expected closed_form, resummed or hpm");
    }
    else if (k == "poisson_tol") cfg.poisson_tol = to_double(k, v);
    else if (k == "ic_beta_re") cfg.ic_beta.real(to_double(k, v));
    else if (k == "ic_beta_im") cfg.ic_beta.imag(to_double(k, v));
    else if (k == "t_on") cfg.t_on = to_double(k, v);
    else if (k == "sigma2_scale") cfg.sigma2_scale = to_double(k, v);
    else if (k == "potential_scale") {
        if (v == "printed") cfg.potential_scale = PotentialScale::AsPrinted;
        else if (v == "hbar_coupling") cfg.potential_scale = PotentialScale::HbarCouplingSquared;
        else throw ConfigError(k, "expected printed or hbar_coupling");
    }
    else if (k == "rtol") cfg.rtol = to_double(k, v);
    else if (k == "atol") cfg.atol = to_double(k, v);
    else if (k == "out") cfg.out_dir = std::string(v);
    else if (k == "csv") cfg.csv = to_bool(k, v);
    else if (k == "svg") cfg.svg = to_bool(k, v);
    else if (k == "logy") cfg.logy = to_bool(k, v);
    else throw ConfigError(k, "unknown key");
}

SimConfig parse_config(std::string_view text, SimConfig base)
{
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        auto line = trim(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no), "expected key=value");
        }
        apply_setting(base, trim(line.substr(0, eq)), line.substr(eq + 1));
    }
    return base;
}

SimConfig load_config(const std::string& path, SimConfig base)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), std::move(base));
}

void validate(const SimConfig& c)
{
    if (!(c.coupling > 0.0)) throw ConfigError("coupling", "must be positive");
    if (!(c.omega > 0.0)) throw ConfigError("omega", "must be positive");
    if (!(c.hbar > 0.0)) throw ConfigError("hbar", "must be positive");
    if (!(c.t1 > c.t0)) throw ConfigError("t1", "must exceed t0");
    if (c.samples < 2) throw ConfigError("samples", "need at least 2");
    if (!(c.poisson_tol > 0.0 && c.poisson_tol < 1.0)) throw ConfigError("poisson_tol", "must lie in (0, 1)");
    if (!(c.rtol > 0.0)) throw ConfigError("rtol", "must be positive");
    if (!(c.atol > 0.0)) throw ConfigError("atol", "must be positive");
    if (c.hpm_order < 1 || c.hpm_order > 4) throw ConfigError("hpm_order", "must lie in [1, 4]");
    if (c.pade_m < 1 || c.pade_n < 1 || c.pade_m + c.pade_n >= 6) {
        throw ConfigError("pade_m", "Pade orders must be positive with M + N < 6");
    }
    if (!(c.sigma2_scale >= 0.0)) throw ConfigError("sigma2_scale", "must be non-negative");
    if (c.sigma < 0 || c.sigma > 3) throw ConfigError("sigma", "must be none, 1, 2 or 3");
    if (c.sigma == 1 && c.b0 == 1.0) throw ConfigError("b0", "sigma 1 requires b0 != 1");
    if (c.out_dir.empty()) throw ConfigError("out", "must not be empty");
}

} // namespace dqed
