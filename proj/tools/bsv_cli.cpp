#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bsv/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"bsv - bright squeezed vacuum polarization-entanglement simulator"};
    app.require_subcommand(1);
    app.footer(bsv::config_help());

    bsv::CliOptions options;
    std::string sweep_kind;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", options.config_path, "configuration file (key = value)");
        cmd->add_option("--out", options.out_dir, "output directory")->capture_default_str();
        cmd->add_option("--seed", [&](const CLI::results_t& r) {
            options.seed = std::stoull(r[0]);
            return true;
        }, "override experiment.seed");
        cmd->add_option("--pulses", [&](const CLI::results_t& r) {
            options.pulses = std::stoll(r[0]);
            return true;
        }, "override experiment.pulses");
        cmd->add_option("--threads", [&](const CLI::results_t& r) {
            options.threads = std::stoi(r[0]);
            return true;
        }, "override experiment.threads (never changes results)");
    };

    add_common(app.add_subcommand("witness", "separability witness, analytic and sampled"));
    auto* sweep = app.add_subcommand("sweep", "parameter sweeps producing two-column tables");
    sweep->add_option("kind", sweep_kind, "aperture|phase|pathlength|efficiency")->required();
    add_common(sweep);
    add_common(app.add_subcommand("entanglement", "Schmidt numbers and the operational measure"));
    add_common(app.add_subcommand("calibrate", "shot-noise calibration fit"));
    add_common(app.add_subcommand("plate", "dichroic plate phases and triplet conversion"));
    add_common(app.add_subcommand("oracle-check", "analytic engine vs truncated Fock oracle"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    return bsv::run_cli(name, sweep_kind, options, std::cout, std::cerr);
}
