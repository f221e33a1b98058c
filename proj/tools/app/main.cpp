#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hyperdecay/error.hpp"
#include "hyperdecay_cli/commands.hpp"

using namespace hyperdecay;
using namespace hyperdecay::cli;

namespace {

struct CommonFlags {
    std::string out;
    int threads = -1;
    std::vector<std::string> pq;
    double tol = 0.0;

    void attach(CLI::App* sub) {
        sub->add_option("--out", out, "output directory");
        sub->add_option("--threads", threads, "worker thread cap (0: hardware)")->check(CLI::NonNegativeNumber);
        sub->add_option("--pq", pq, "Lebesgue pair such as 1,inf (repeatable)");
        sub->add_option("--tol", tol, "exponent tolerance for pass/fail")->check(CLI::PositiveNumber);
    }

    Overrides overrides() const {
        Overrides ov;
        if (!out.empty()) ov.out = out;
        if (threads >= 0) ov.threads = threads;
        for (const auto& s : pq) ov.pq.push_back(parse_pq(s));
        if (tol > 0) ov.tol = tol;
        return ov;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decay-rate classification and verification for hyperbolic symbols"};
    app.require_subcommand(1);

    std::string config_path;
    CommonFlags common;
    std::vector<CLI::App*> piped;
    for (const char* name : {"analyze", "verify", "solve"}) {
        const char* help = std::string(name) == "analyze" ? "classify roots and print the decay prediction"
                           : std::string(name) == "verify" ? "classify, predict, and fit norm surrogates"
                                                           : "FFT grid-sample snapshots and sup-norm series";
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "run config or symbol JSON")->required();
        common.attach(sub);
        piped.push_back(sub);
    }

    int gn = 1, gN = 1;
    std::string gout = ".";
    auto* grad = app.add_subcommand("grad", "write the Grad moment system symbol and matrices");
    grad->add_option("--n", gn, "space dimension")->check(CLI::PositiveNumber);
    grad->add_option("--N", gN, "moment order")->check(CLI::PositiveNumber);
    grad->add_option("--out", gout, "output directory");

    WaveFamilyParams wp;
    int wn = 1;
    bool analyze_only = false;
    CommonFlags wave_flags;
    auto* wave = app.add_subcommand("wave", "damped Klein-Gordon family u_tt - c^2 Lap u + delta u_t + mu u = 0");
    wave->add_option("--c", wp.c, "wave speed")->check(CLI::PositiveNumber);
    wave->add_option("--delta", wp.delta, "damping");
    wave->add_option("--mu", wp.mu, "mass term");
    wave->add_option("--n", wn, "space dimension")->check(CLI::PositiveNumber);
    wave->add_flag("--analyze", analyze_only, "skip the decay fits");
    wave_flags.attach(wave);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_config;
    }

    try {
        if (grad->parsed()) return run_grad(gn, gN, gout, std::cout, std::cerr);
        if (wave->parsed()) {
            RunConfig cfg = wave_config(wp, wn);
            apply_overrides(cfg, wave_flags.overrides());
            return run_command(analyze_only ? "analyze" : "verify", std::move(cfg), std::cout, std::cerr);
        }
        for (auto* sub : piped) {
            if (!sub->parsed()) continue;
            RunConfig cfg = load_config(config_path);
            apply_overrides(cfg, common.overrides());
            return run_command(sub->get_name(), std::move(cfg), std::cout, std::cerr);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const SizeGuardError& e) {
        std::cerr << "size guard: " << e.what() << '\n';
        return exit_numerical;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_numerical;
    }
    return exit_config;
}
