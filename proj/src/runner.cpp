#include "bsv/runner.hpp"

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include "bsv/fock_state.hpp"
#include "bsv/gaussian_state.hpp"
#include "bsv/optics_plate.hpp"
#include "bsv/schmidt.hpp"
#include "bsv/stokes.hpp"

namespace bsv {

namespace {

std::string out_path(const std::string& out_dir, const std::string& name) {
    std::filesystem::create_directories(out_dir);
    return (std::filesystem::path(out_dir) / name).string();
}

std::string fmt(double v) { return format_double(v); }

GaussianState analytic_state(const ExperimentConfig& ec) {
    GaussianState s = make_singlet(ec.gamma);
    LossMap loss;
    loss.eta = {ec.eta[0], ec.eta[1], ec.eta[2], ec.eta[3]};
    return apply_loss(s, loss);
}

PlateSpec plate_from_config(const KeyValueConfig& config) {
    PlateSpec spec;
    spec.thickness = config.get_double("plate.thickness_um") * 1e-6;
    spec.lambda_a = config.get_double("aperture.lambda_a_nm") * 1e-9;
    spec.lambda_b = config.get_double("aperture.lambda_b_nm") * 1e-9;
    return spec;
}

std::vector<double> linspace(double lo, double hi, long long n) {
    if (n < 2) throw ConfigError("sweep needs at least 2 points");
    std::vector<double> v(static_cast<size_t>(n));
    for (long long i = 0; i < n; ++i)
        v[static_cast<size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

} // namespace

KeyValueConfig load_config(const CliOptions& options) {
    KeyValueConfig config =
        options.config_path.empty() ? KeyValueConfig() : KeyValueConfig::from_file(options.config_path);
    if (options.seed) config.set("experiment.seed", std::to_string(*options.seed));
    if (options.pulses) config.set("experiment.pulses", std::to_string(*options.pulses));
    if (options.threads) config.set("experiment.threads", std::to_string(*options.threads));
    return config;
}

ExperimentConfig experiment_from_config(const KeyValueConfig& config) {
    ExperimentConfig ec;
    ec.gamma = config.get_double("experiment.gamma");
    ec.m_pairs = config.get_double("experiment.m_pairs");
    ec.pulses = config.get_int("experiment.pulses");
    const double eta = config.get_double("experiment.eta");
    const char* over[4] = {"experiment.eta_ah", "experiment.eta_av", "experiment.eta_bh",
                           "experiment.eta_bv"};
    for (int c = 0; c < 4; ++c) {
        const double v = config.get_double(over[c]);
        ec.eta[static_cast<size_t>(c)] = v < 0.0 ? eta : v;
    }
    ec.pump_jitter = config.get_double("experiment.pump_jitter");
    ec.electronic_noise = config.get_double("experiment.electronic_noise");
    ec.seed = config.get_u64("experiment.seed");
    ec.threads = static_cast<int>(config.get_int("experiment.threads"));
    const double d1 = config.get_double("aperture.d1_mm");
    const double d2 = config.get_double("aperture.d2_mm");
    const double la = config.get_double("aperture.lambda_a_nm");
    const double lb = config.get_double("aperture.lambda_b_nm");
    if (!(d1 > 0.0 && d2 > 0.0 && la > 0.0 && lb > 0.0))
        throw ConfigError("aperture geometry must be positive");
    ec.aperture_ratio = (d1 / la) / (d2 / lb);
    try {
        ec.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return ec;
}

void run_witness(const KeyValueConfig& config, const std::string& out_dir, std::ostream& log) {
    const ExperimentConfig ec = experiment_from_config(config);

    const StokesMoments analytic = stokes_moments_gaussian(analytic_state(ec));
    const WitnessResult analytic_w = witness(analytic);

    const StokesRun run = simulate_stokes_run(ec);
    const StokesMoments sampled = estimate_stokes(run);
    const WitnessResult sampled_w = witness(sampled);

    RunManifest manifest = RunManifest::make("witness", config);
    TableWriter table(out_path(out_dir, "witness.csv"), manifest, {"quantity", "value", "stderr"});
    table.row({"lhs_analytic", fmt(analytic_w.lhs), ""});
    table.row({"lhs_sampled", fmt(sampled_w.lhs), fmt(sampled_w.stderr_lhs)});
    table.row({"violated", sampled_w.violated ? "1" : "0", ""});
    table.row({"sigma_below", fmt(sampled_w.sigma_below), ""});
    table.row({"mean_s0_analytic", fmt(analytic.mean_s0), ""});
    table.row({"mean_s0_sampled", fmt(sampled.mean_s0), fmt(sampled.se_mean_s0)});
    for (int i = 1; i <= 3; ++i) {
        table.row({"nrf_s" + std::to_string(i) + "_analytic", fmt(nrf(analytic, i)), ""});
        table.row({"nrf_s" + std::to_string(i) + "_sampled", fmt(nrf(sampled, i)),
                   fmt(sampled.se_var(i) / sampled.mean_s0)});
    }
    table.row({"photons_per_mode", fmt(ec.photons_per_mode()), ""});
    table.close();
    log << "witness: lhs_analytic=" << analytic_w.lhs << " lhs_sampled=" << sampled_w.lhs << " +/- "
        << sampled_w.stderr_lhs << " sigma_below=" << sampled_w.sigma_below << "\n";
}

void run_sweep(const std::string& kind, const KeyValueConfig& config, const std::string& out_dir,
               std::ostream& log) {
    const ExperimentConfig ec = experiment_from_config(config);
    RunManifest manifest = RunManifest::make("sweep:" + kind, config);

    if (kind == "aperture") {
        const auto d1 = linspace(config.get_double("aperture.sweep_min_mm"),
                                 config.get_double("aperture.sweep_max_mm"),
                                 config.get_int("aperture.sweep_points"));
        const auto points = mode_mismatch_sweep(ec, d1, config.get_double("aperture.d2_mm"),
                                                config.get_double("aperture.lambda_a_nm"),
                                                config.get_double("aperture.lambda_b_nm"));
        TableWriter table(out_path(out_dir, "sweep_aperture.csv"), manifest,
                          {"d1_mm", "aperture_ratio", "lhs", "stderr"});
        for (const auto& p : points)
            table.row({fmt(p.d1_mm), fmt(p.aperture_ratio), fmt(p.lhs), fmt(p.stderr_lhs)});
        table.close();
        log << "sweep aperture: " << points.size() << " points\n";
        return;
    }
    if (kind == "phase") {
        const auto grid = linspace(0.0, 2.0 * std::numbers::pi, config.get_int("phase.points"));
        const double offset = config.get_double("phase.path_offset_mm") * 1e-3;
        const auto rows = mz_phase_scan(ec.gamma, grid, offset);
        TableWriter table(out_path(out_dir, "sweep_phase.csv"), manifest,
                          {"phi_rad", "nrf_s2", "nrf_min", "nrf_max"});
        for (const auto& r : rows)
            table.row({fmt(r.phi), fmt(r.nrf_s2), fmt(r.nrf_min), fmt(r.nrf_max)});
        table.close();
        log << "sweep phase: " << rows.size() << " points\n";
        return;
    }
    if (kind == "pathlength") {
        const double half = config.get_double("pathlength.sweep_max_mm");
        const auto offsets = linspace(-half, half, config.get_int("pathlength.sweep_points"));
        TableWriter table(out_path(out_dir, "sweep_pathlength.csv"), manifest,
                          {"path_offset_mm", "nrf_min", "nrf_max"});
        const std::vector<double> probe{0.0};
        for (double mm : offsets) {
            const auto rows = mz_phase_scan(ec.gamma, probe, mm * 1e-3);
            table.row({fmt(mm), fmt(rows.front().nrf_min), fmt(rows.front().nrf_max)});
        }
        table.close();
        log << "sweep pathlength: " << offsets.size() << " points\n";
        return;
    }
    if (kind == "efficiency") {
        const auto etas = linspace(config.get_double("efficiency.sweep_min"),
                                   config.get_double("efficiency.sweep_max"),
                                   config.get_int("efficiency.sweep_points"));
        TableWriter table(out_path(out_dir, "sweep_efficiency.csv"), manifest,
                          {"eta", "lhs", "violated"});
        for (double eta : etas) {
            GaussianState s = apply_loss(make_singlet(ec.gamma), LossMap::uniform(4, eta));
            const WitnessResult w = witness(stokes_moments_gaussian(s));
            table.row({fmt(eta), fmt(w.lhs), w.violated ? "1" : "0"});
        }
        table.close();
        log << "sweep efficiency: " << etas.size() << " points\n";
        return;
    }
    throw ConfigError("unknown sweep kind '" + kind + "' (aperture|phase|pathlength|efficiency)");
}

void run_entanglement(const KeyValueConfig& config, const std::string& out_dir, std::ostream& log) {
    const ExperimentConfig ec = experiment_from_config(config);
    // R_eta diverges at eta = 1; keep the analytic entry finite for the
    // lossless case, where the MC value is the meaningful one.
    const double eta = std::min(ec.uniform_eta(), 1.0 - 1e-12);
    EntanglementReport report =
        make_entanglement_report(ec.gamma, static_cast<long long>(ec.m_pairs), eta);

    RunManifest manifest = RunManifest::make("entanglement", config);
    TableWriter table(out_path(out_dir, "entanglement.csv"), manifest, {"quantity", "value"});
    table.row({"mean_photons", fmt(report.mean_photons)});
    table.row({"k_single", fmt(report.k_single)});
    table.row({"ln_k_product", fmt(report.ln_k_product)});
    table.row({"k_product", fmt(report.k_product)});
    table.row({"k_poisson", fmt(report.k_poisson)});
    table.row({"k_asymptotic", fmt(report.k_asymptotic)});
    table.row({"r_ideal", fmt(report.r_ideal)});
    table.row({"r_eta", fmt(report.r_eta)});

    if (ec.gamma > 0.0) {
        const PulseEnsemble ensemble = simulate_ensemble(ec, 1);
        const MeasureRResult mr = measure_r_details(ensemble, ec);
        table.row({"r_mc", fmt(mr.r)});
        table.row({"r_mc_band_low", fmt(0.95 * mr.r)});
        table.row({"r_mc_band_high", fmt(1.05 * mr.r)});
        table.row({"fwhm_unconditional", fmt(mr.fwhm_unconditional)});
        table.row({"fwhm_conditional", fmt(mr.fwhm_conditional)});
        table.row({"window_lo", std::to_string(mr.window.lo)});
        table.row({"window_hi", std::to_string(mr.window.hi)});
        table.close();

        TableWriter uncond(out_path(out_dir, "unconditional.csv"), manifest, {"bin_center", "count"});
        for (size_t i = 0; i < mr.unconditional.counts.size(); ++i)
            uncond.row({fmt(mr.unconditional.bin_center(i)), fmt(mr.unconditional.counts[i])});
        uncond.close();
        TableWriter cond(out_path(out_dir, "conditional.csv"), manifest, {"bin_center", "count"});
        for (size_t i = 0; i < mr.conditional.counts.size(); ++i)
            cond.row({fmt(mr.conditional.bin_center(i)), fmt(mr.conditional.counts[i])});
        cond.close();
        log << "entanglement: K_poisson=" << report.k_poisson << " R_mc=" << mr.r
            << " R_eta=" << report.r_eta << "\n";
    } else {
        table.close();
        log << "entanglement: degenerate gamma=0 report\n";
    }
}

void run_calibrate(const KeyValueConfig& config, const std::string& out_dir, std::ostream& log) {
    const ExperimentConfig ec = experiment_from_config(config);
    const auto levels = config.get_double_list("calibrate.levels");
    CalibrationFit fit;
    try {
        fit = calibrate_shot_noise(ec, levels);
    } catch (const std::runtime_error& e) {
        throw NumericError(e.what());
    }

    RunManifest manifest = RunManifest::make("calibrate", config);
    TableWriter points(out_path(out_dir, "calibration_points.csv"), manifest,
                       {"level", "mean_sum", "var_diff", "fit", "residual"});
    for (size_t i = 0; i < fit.points.size(); ++i) {
        const double x = fit.points[i][0];
        const double y = fit.points[i][1];
        const double f = fit.intercept + fit.alpha * x;
        points.row({fmt(levels[i]), fmt(x), fmt(y), fmt(f), fmt(y - f)});
    }
    points.close();
    TableWriter summary(out_path(out_dir, "calibration_fit.csv"), manifest, {"quantity", "value"});
    summary.row({"alpha", fmt(fit.alpha)});
    summary.row({"intercept", fmt(fit.intercept)});
    summary.row({"residual_rms", fmt(fit.residual_rms)});
    summary.row({"expected_intercept", fmt(2.0 * ec.electronic_noise * ec.electronic_noise)});
    summary.close();
    log << "calibrate: alpha=" << fit.alpha << " intercept=" << fit.intercept << "\n";
}

void run_plate(const KeyValueConfig& config, const std::string& out_dir, std::ostream& log) {
    const ExperimentConfig ec = experiment_from_config(config);
    const PlateSpec spec = plate_from_config(config);

    const double delay_a = oe_delay(spec, spec.lambda_a);
    const double delay_b = oe_delay(spec, spec.lambda_b);
    const double residual = conversion_residual(spec);

    GaussianState converted = apply_mode_phases(make_triplet(TripletKind::PsiPlus, ec.gamma),
                                                plate_mode_phases(spec));
    const WitnessResult w = witness(stokes_moments_gaussian(converted));
    const double bound = converted_witness_bound(ec.gamma, residual);

    RunManifest manifest = RunManifest::make("plate", config);
    TableWriter table(out_path(out_dir, "plate.csv"), manifest, {"quantity", "value"});
    table.row({"n_o_lambda_a", fmt(refractive_index(spec.lambda_a, Ray::Ordinary))});
    table.row({"n_e_lambda_a", fmt(refractive_index(spec.lambda_a, Ray::Extraordinary))});
    table.row({"n_o_lambda_b", fmt(refractive_index(spec.lambda_b, Ray::Ordinary))});
    table.row({"n_e_lambda_b", fmt(refractive_index(spec.lambda_b, Ray::Extraordinary))});
    table.row({"delay_a_pi", fmt(delay_a / std::numbers::pi)});
    table.row({"delay_b_pi", fmt(delay_b / std::numbers::pi)});
    table.row({"delay_diff_pi", fmt((delay_a - delay_b) / std::numbers::pi)});
    table.row({"residual_pi", fmt(residual / std::numbers::pi)});
    table.row({"converted_lhs", fmt(w.lhs)});
    table.row({"converted_bound", fmt(bound)});
    table.row({"violated", w.violated ? "1" : "0"});
    table.close();
    log << "plate: delays " << delay_a / std::numbers::pi << "pi / " << delay_b / std::numbers::pi
        << "pi, converted lhs=" << w.lhs << "\n";
}

void run_oracle_check(const KeyValueConfig& config, const std::string& out_dir, std::ostream& log) {
    RunManifest manifest = RunManifest::make("oracle-check", config);
    TableWriter table(out_path(out_dir, "oracle_check.csv"), manifest,
                      {"gamma", "state", "max_mean_diff", "max_var_diff"});

    std::mt19937_64 rng(config.get_u64("experiment.seed"));
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

    double worst = 0.0;
    const double gammas[] = {0.05, 0.1, 0.2, 0.3, 0.5};
    for (double g : gammas) {
        const int n_max = min_nmax_for_tail(g, 1e-13);
        struct Case {
            const char* name;
            GaussianState gauss;
            FockState fock;
        };
        std::vector<Case> cases;
        cases.push_back({"singlet", make_singlet(g), build_singlet(g, n_max)});
        cases.push_back({"phi0", make_phi_state(g, 0.0), build_phi_state(g, 0.0, n_max)});
        cases.push_back({"phi_pi", make_phi_state(g, std::numbers::pi),
                         build_phi_state(g, std::numbers::pi, n_max)});
        const auto rot = PolarizationRotation::linear(angle(rng));
        cases.push_back({"singlet_rotated", apply_rotation(cases[0].gauss, rot),
                         apply_rotation_fock(cases[0].fock, rot)});

        for (const auto& c : cases) {
            const StokesMoments a = stokes_moments_gaussian(c.gauss);
            const StokesMoments b = stokes_moments_exact(c.fock);
            const double mean_diff =
                std::max({std::abs(a.mean_s0 - b.mean_s0), std::abs(a.mean_s1 - b.mean_s1),
                          std::abs(a.mean_s2 - b.mean_s2), std::abs(a.mean_s3 - b.mean_s3)});
            const double var_diff =
                std::max({std::abs(a.var_s1 - b.var_s1), std::abs(a.var_s2 - b.var_s2),
                          std::abs(a.var_s3 - b.var_s3)});
            worst = std::max({worst, mean_diff, var_diff});
            table.row({fmt(g), c.name, fmt(mean_diff), fmt(var_diff)});
        }
    }
    table.close();
    log << "oracle-check: worst deviation " << worst << "\n";
    if (!(worst < 1e-8))
        throw NumericError("oracle-check: engine/oracle deviation " + fmt(worst) + " exceeds 1e-8");
}

int run_cli(const std::string& subcommand, const std::string& sweep_kind, const CliOptions& options,
            std::ostream& log, std::ostream& err) {
    try {
        const KeyValueConfig config = load_config(options);
        if (subcommand == "witness")
            run_witness(config, options.out_dir, log);
        else if (subcommand == "sweep")
            run_sweep(sweep_kind, config, options.out_dir, log);
        else if (subcommand == "entanglement")
            run_entanglement(config, options.out_dir, log);
        else if (subcommand == "calibrate")
            run_calibrate(config, options.out_dir, log);
        else if (subcommand == "plate")
            run_plate(config, options.out_dir, log);
        else if (subcommand == "oracle-check")
            run_oracle_check(config, options.out_dir, log);
        else
            throw ConfigError("unknown subcommand '" + subcommand + "'");
        return 0;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

std::string config_help() {
    std::string h = "Configuration keys (key = value, optionally grouped by [section]):\n";
    for (const auto& spec : config_schema()) {
        h += "  ";
        h += spec.key;
        h += " (default ";
        h += spec.default_value;
        h += ", unit ";
        h += spec.unit;
        h += "): ";
        h += spec.description;
        h += "\n";
    }
    return h;
}

} // namespace bsv
