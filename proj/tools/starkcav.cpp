// starkcav CLI — figure reproduction, parameter sweeps and validation.
//
// Exit codes: 0 success, 1 validation failure, 2 usage error, 3 I/O error.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "starkcav/scan.hpp"
#include "starkcav/validate.hpp"

namespace {

using namespace starkcav;

int run(int argc, char** argv) {
    CLI::App app{
        "starkcav — two two-level atoms in a single-mode cavity with Stark "
        "shift: coherence and discord dynamics"};
    app.set_config("--config", "",
                   "plain-text key=value config file ('#' comments); "
                   "command-line flags take precedence");

    std::string figure;
    app.add_option("--figure", figure,
                   "reproduce a bundled figure preset (fig2|fig3|fig4|fig5)")
        ->check(CLI::IsMember({"fig2", "fig3", "fig4", "fig5"}));

    bool validate = false;
    app.add_flag("--validate", validate,
                 "run the validation suite (exit 1 on failure)");

    SystemParams point;
    double alpha = 0.0;
    app.add_option("--wz", point.wz, "atomic transition frequency");
    app.add_option("--wc", point.wc, "cavity mode frequency");
    app.add_option("--gamma1", point.gamma1, "Stark shift, atom 1");
    app.add_option("--gamma2", point.gamma2, "Stark shift, atom 2");
    app.add_option("--lambda1", point.lambda1, "coupling, atom 1");
    app.add_option("--lambda2", point.lambda2, "coupling, atom 2");
    app.add_option("--n", point.n, "Fock excitation index")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--alpha", alpha,
                   "coherent amplitude (coherent mode; real)");

    scan::SweepConfig cfg;
    std::string mode = "fock", backend = "both", measure = "both";
    app.add_option("--mode", mode, "state mode")
        ->check(CLI::IsMember({"fock", "coherent"}));
    app.add_option("--backend", backend, "propagation backend")
        ->check(CLI::IsMember({"exact", "symmetric", "both"}));
    app.add_option("--measure", measure, "measures to compute")
        ->check(CLI::IsMember({"qc", "qd", "both"}));
    app.add_option("--tmax", cfg.t_max, "end of the time grid")
        ->check(CLI::PositiveNumber);
    app.add_option("--samples", cfg.samples, "time samples")
        ->check(CLI::Range(2, 1 << 22));
    std::string out_dir = ".";
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--bf-theta-steps", cfg.bf_theta_steps,
                   "brute-force theta grid points")
        ->check(CLI::Range(9, 1 << 16));
    app.add_option("--bf-phi-steps", cfg.bf_phi_steps,
                   "brute-force phi grid points")
        ->check(CLI::Range(9, 1 << 16));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    cfg.out_dir = out_dir;
    cfg.mode = mode == "fock" ? scan::StateMode::fock
                              : scan::StateMode::coherent;
    cfg.backend = backend == "exact" ? scan::BackendSelect::exact
                  : backend == "symmetric" ? scan::BackendSelect::symmetric
                                           : scan::BackendSelect::both;
    cfg.measure = measure == "qc" ? scan::MeasureSelect::qc
                  : measure == "qd" ? scan::MeasureSelect::qd
                                    : scan::MeasureSelect::both;
    point.alpha = Complex{alpha, 0.0};

    if (validate) {
        scan::ValidationOptions opts;
        opts.bf_theta_steps = cfg.bf_theta_steps;
        opts.bf_phi_steps = cfg.bf_phi_steps;
        const scan::ValidationReport report = scan::run_validation(opts);
        std::cout << report.text();

        std::filesystem::create_directories(cfg.out_dir);
        std::ofstream json(cfg.out_dir / "validation.json",
                           std::ios::binary | std::ios::trunc);
        json << report.json();
        if (!json) {
            std::cerr << "error: cannot write validation.json\n";
            return 3;
        }
        return report.all_pass() ? 0 : 1;
    }

    if (!figure.empty()) {
        const auto files = scan::reproduce_figure(figure, cfg.out_dir);
        for (const auto& f : files) std::cout << f.string() << '\n';
        return 0;
    }

    point.validate();
    if (point.trivial_coupling()) {
        std::cerr << "warning: lambda1 = lambda2 = 0, dynamics are trivial\n";
    }
    cfg.points = {point};
    const auto files = scan::run_sweep(cfg);
    for (const auto& f : files) std::cout << f.string() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
