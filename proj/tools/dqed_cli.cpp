// Command-line front end: standard inversion, Darboux-modified inversion and
// the verification suite.
//
//   dqed jc|darboux|verify [--config PATH] [--sigma N] [--t0 X --t1 X --samples N]
//                          [--out DIR] [--csv] [--svg] [--logy]
//
// Exit codes: 0 success, 2 configuration error, 3 solver error,
// 4 verification failure.

#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "dqed/config.hpp"
#include "dqed/errors.hpp"
#include "dqed/pipeline.hpp"
#include "dqed/verification.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kIoError = 1;
constexpr int kConfigError = 2;
constexpr int kSolverError = 3;
constexpr int kVerifyFailed = 4;

struct RunFlags {
    std::optional<std::string> config;
    std::optional<std::string> sigma;
    std::optional<std::string> t0, t1, samples;
    std::optional<std::string> out;
    bool csv = false;
    bool svg = false;
    bool logy = false;
};

void add_run_options(CLI::App& cmd, RunFlags& f, bool with_sigma)
{
    cmd.add_option("--config", f.config, "key=value configuration file");
    if (with_sigma) cmd.add_option("--sigma", f.sigma, "intertwiner component: 1, 2 or 3");
    cmd.add_option("--t0", f.t0, "start of the time span");
    cmd.add_option("--t1", f.t1, "end of the time span");
    cmd.add_option("--samples", f.samples, "number of grid points (>= 2)");
    cmd.add_option("--out", f.out, "output directory");
    cmd.add_flag("--csv", f.csv, "write CSV traces (selecting a format disables the unselected one)");
    cmd.add_flag("--svg", f.svg, "write SVG plots (selecting a format disables the unselected one)");
    cmd.add_flag("--logy", f.logy, "logarithmic vertical axis in SVG plots");
}

// Defaults, then the config file, then command-line flags.
dqed::SimConfig resolve(const RunFlags& f)
{
    dqed::SimConfig cfg;
    if (f.config) cfg = dqed::load_config(*f.config, cfg);
    const std::pair<const char*, const std::optional<std::string>*> overrides[] = {
        {"sigma", &f.sigma}, {"t0", &f.t0}, {"t1", &f.t1}, {"samples", &f.samples}, {"out", &f.out}};
    for (const auto& [key, value] : overrides)
        if (*value) dqed::apply_setting(cfg, key, **value);
    if (f.csv || f.svg) {
        cfg.csv = f.csv;
        cfg.svg = f.svg;
    }
    if (f.logy) cfg.logy = true;
    dqed::validate(cfg);
    return cfg;
}

void report(const dqed::RunResult& r)
{
    for (const auto& path : r.files) std::cout << "wrote " << path << '\n';
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Jaynes-Cummings and Darboux-modified atomic inversion"};
    app.require_subcommand(1);

    RunFlags jc_flags, darboux_flags;
    auto* jc = app.add_subcommand("jc", "standard Jaynes-Cummings inversion");
    add_run_options(*jc, jc_flags, false);
    auto* darboux = app.add_subcommand("darboux", "Darboux-modified inversion and transformed potential");
    add_run_options(*darboux, darboux_flags, true);
    app.add_subcommand("verify", "run the residual and invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (*jc) {
            report(dqed::run_jc(resolve(jc_flags)));
            return kOk;
        }
        if (*darboux) {
            const auto cfg = resolve(darboux_flags);
            if (cfg.sigma == 0) throw dqed::ConfigError("sigma", "darboux requires --sigma 1, 2 or 3");
            report(dqed::run_darboux(cfg));
            return kOk;
        }
        const auto results = dqed::run_verification_suite();
        std::cout << dqed::format_report(results);
        for (const auto& r : results)
            if (!r.pass) return kVerifyFailed;
        return kOk;
    } catch (const dqed::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const dqed::SolverError& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return kSolverError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIoError;
    }
}
