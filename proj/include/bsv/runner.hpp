#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "bsv/config.hpp"
#include "bsv/photon_mc.hpp"

namespace bsv {

struct CliOptions {
    std::string config_path; // empty: built-in defaults
    std::string out_dir = ".";
    std::optional<uint64_t> seed;
    std::optional<long long> pulses;
    std::optional<int> threads;
};

// Config file plus command-line overrides, fully resolved.
KeyValueConfig load_config(const CliOptions& options);

// Monte Carlo parameters from the resolved config.
ExperimentConfig experiment_from_config(const KeyValueConfig& config);

// Subcommand bodies; each writes CSV tables under out_dir and logs a
// one-line summary. They throw ConfigError / NumericError on failure.
void run_witness(const KeyValueConfig& config, const std::string& out_dir, std::ostream& log);
void run_sweep(const std::string& kind, const KeyValueConfig& config, const std::string& out_dir,
               std::ostream& log);
void run_entanglement(const KeyValueConfig& config, const std::string& out_dir, std::ostream& log);
void run_calibrate(const KeyValueConfig& config, const std::string& out_dir, std::ostream& log);
void run_plate(const KeyValueConfig& config, const std::string& out_dir, std::ostream& log);
void run_oracle_check(const KeyValueConfig& config, const std::string& out_dir, std::ostream& log);

// Exit codes: 0 success, 2 config error, 3 numeric/convergence failure.
int run_cli(const std::string& subcommand, const std::string& sweep_kind, const CliOptions& options,
            std::ostream& log, std::ostream& err);

// Help block listing every config key with default and unit.
std::string config_help();

} // namespace bsv
