#include "dqed/pipeline.hpp"

#include <filesystem>

#include "dqed/errors.hpp"
#include "dqed/inversion.hpp"
#include "dqed/kernels.hpp"
#include "dqed/sigma_solvers.hpp"

namespace dqed {

namespace {

void emit(const SimConfig& cfg, const std::string& stem, const Series2D& s, const std::string& title,
          RunResult& out)
{
    std::filesystem::create_directories(cfg.out_dir);
    const std::filesystem::path dir(cfg.out_dir);
    if (cfg.csv) {
        const auto path = (dir / (stem + ".csv")).string();
        write_csv(path, s);
        out.files.push_back(path);
    }
    if (cfg.svg) {
        const auto path = (dir / (stem + ".svg")).string();
        SvgOptions o;
        o.title = title;
        o.y_label = s.name;
        o.logy = cfg.logy;
        write_text(path, render_svg(std::span<const Series2D>(&s, 1), o));
        out.files.push_back(path);
    }
}

} // namespace

int photon_cutoff(const SimConfig& cfg)
{
    return poisson_truncation(std::norm(cfg.gamma), cfg.poisson_tol);
}

Series2D simulate_jc(const SimConfig& cfg)
{
    validate(cfg);
    const auto p = cfg.params();
    auto t = make_grid(cfg.t0, cfg.t1, cfg.samples);
    auto w = parallel::standard_inversion(t, p, photon_cutoff(cfg));
    return {"W", std::move(t), std::move(w)};
}

RunResult simulate_darboux(const SimConfig& cfg)
{
    validate(cfg);
    if (cfg.sigma < 1) throw ConfigError("sigma", "the darboux run needs sigma 1, 2 or 3");
    const auto p = cfg.params();
    const auto t = make_grid(cfg.t0, cfg.t1, cfg.samples);

    std::optional<DarbouxSolution> sol;
    switch (sigma_from_index(cfg.sigma)) {
    case Sigma::One:
        sol.emplace(solve_sigma1(p, t, Sigma1Options{cfg.sigma1_source, cfg.hpm_order, cfg.pade_m, cfg.pade_n},
                                 cfg.potential_scale));
        break;
    case Sigma::Two: {
        RkOptions rk;
        rk.rtol = cfg.rtol;
        rk.atol = cfg.atol;
        sol.emplace(solve_sigma2(p, cfg.ic_beta, t, rk, cfg.potential_scale));
        break;
    }
    case Sigma::Three:
        sol.emplace(solve_sigma3(p, sigma3_initial_state(p, cfg.t0, cfg.ic_beta), t, cfg.potential_scale));
        break;
    }

    auto drive = drive_from_solution(*sol);
    std::vector<double> v(sol->vmag().begin(), sol->vmag().end());
    if (cfg.sigma == 1) {
        drive = drive.switched_on(cfg.t_on);
        for (std::size_t k = 0; k < t.size(); ++k)
            if (t[k] < cfg.t_on) v[k] = 0.0;
    } else if (cfg.sigma == 2) {
        drive = drive.scaled(cfg.sigma2_scale);
    }

    RunResult r;
    r.w = {"W", t, parallel::modified_inversion(t, drive.nbb(), p, photon_cutoff(cfg))};
    r.v = Series2D{"V", t, std::move(v)};
    return r;
}

RunResult run_jc(const SimConfig& cfg)
{
    RunResult r;
    r.w = simulate_jc(cfg);
    emit(cfg, "jc_W", r.w, "standard atomic inversion", r);
    return r;
}

RunResult run_darboux(const SimConfig& cfg)
{
    RunResult r = simulate_darboux(cfg);
    const std::string stem = "sigma" + std::to_string(cfg.sigma);
    emit(cfg, stem + "_W", r.w, "modified atomic inversion, sigma " + std::to_string(cfg.sigma), r);
    emit(cfg, stem + "_V", *r.v, "transformed potential magnitude, sigma " + std::to_string(cfg.sigma), r);
    return r;
}

} // namespace dqed
