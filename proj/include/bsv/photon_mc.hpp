#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "bsv/histogram.hpp"
#include "bsv/rng.hpp"
#include "bsv/stokes.hpp"

namespace bsv {

// Pulse-resolved Monte Carlo of the twin-beam experiment.
//
// Per pulse and mode pair the two polarization pairings each carry a
// Bose-Einstein photon number with mean sinh^2(gamma), perfectly correlated
// between the twin channels. The sum over m_pairs modes is drawn directly
// as a negative binomial (gamma-Poisson mixture), so a pulse costs O(1)
// regardless of the mode count. Polarization bases are applied analytically
// before sampling; each Stokes component is measured on its own ensemble.
struct ExperimentConfig {
    enum class Source { SqueezedVacuum, Coherent };

    double gamma = 0.33;
    double m_pairs = 1000.0; // mode pairs accepted by the fixed aperture
    long long pulses = 20000;
    std::array<double, 4> eta{1.0, 1.0, 1.0, 1.0}; // per channel AH, AV, BH, BV
    double pump_jitter = 0.0;          // relative std of the per-pulse gain
    double electronic_noise = 300.0;   // electrons/pulse per detector
    uint64_t seed = 1;
    double aperture_ratio = 1.0;       // r = (D1/lambda_A) / (D2/lambda_B)
    int threads = 1;

    Source source = Source::SqueezedVacuum;
    double coherent_mean_per_channel = 0.0;

    void validate() const;
    double photons_per_mode() const;       // sinh^2(gamma)
    double mean_generated_per_pulse() const;
    double uniform_eta() const;            // mean of the four channel transmissions
};

// Counts are in the measurement basis of the ensemble they belong to.
struct PulseSample {
    std::array<long long, 4> generated{};
    std::array<long long, 4> detected{};
    std::array<double, 2> readout{}; // detector sums (H-like, V-like) + electronic noise
};

struct PulseEnsemble {
    int basis = 1; // which Stokes component the channel difference measures
    std::vector<PulseSample> pulses;
};

// Photon generation only; detection is applied separately.
PulseSample sample_pulse(const ExperimentConfig& config, uint64_t pulse_index, int basis = 1);

// Binomial thinning per channel plus Gaussian electronic noise on the two
// detector sums.
void apply_detection(PulseSample& sample, const ExperimentConfig& config, Philox4x32& rng);

// Deterministic in (config, seed) independent of the thread count.
PulseEnsemble simulate_ensemble(const ExperimentConfig& config, int basis);

struct StokesRun {
    ExperimentConfig config;
    std::array<PulseEnsemble, 3> basis_ensembles;
};

StokesRun simulate_stokes_run(const ExperimentConfig& config);

// Sample moments from the readout with the configured electronic-noise
// variance subtracted; jackknife standard errors.
StokesMoments estimate_stokes(const StokesRun& run);

enum class Stage { Generated, Detected };

struct ChannelSel {
    enum class Kind { AH, AV, BH, BV, BeamA, BeamB };
    Kind kind = Kind::BeamB;
    Stage stage = Stage::Detected;
};

struct CountWindow {
    long long lo = 0;
    long long hi = 0; // inclusive
};

long long select_count(const PulseSample& s, const ChannelSel& sel);

// Histogram of `value` over pulses whose `condition` count lies in the
// window. Fewer than 100 surviving pulses sets low_statistics.
Histogram conditional_distribution(const PulseEnsemble& ensemble, const ChannelSel& value,
                                   const ChannelSel& condition, const CountWindow& window);

struct MeasureRResult {
    double r = 0.0;
    double fwhm_unconditional = 0.0;
    double fwhm_conditional = 0.0;
    CountWindow window;
    Histogram unconditional;
    Histogram conditional;
};

// FWHM(unconditional beam-B) / FWHM(conditional beam-B | beam-A window).
// The post-selection window is placed on the pre-detection twin counts; with
// pump jitter the numerator is replaced by a simulated shot-noise-limited
// source of equal detected mean.
MeasureRResult measure_r_details(const PulseEnsemble& ensemble, const ExperimentConfig& config);
double measure_r(const PulseEnsemble& ensemble, const ExperimentConfig& config);

struct CalibrationFit {
    double alpha = 0.0;       // shot-noise slope
    double intercept = 0.0;   // electronic-noise variance of the difference
    double residual_rms = 0.0;
    std::vector<std::array<double, 2>> points; // (mean sum, var diff)
};

// Poissonian source swept over `levels` mean photons per pulse; least-squares
// fit of difference-signal variance against mean sum signal.
CalibrationFit calibrate_shot_noise(const ExperimentConfig& config, std::span<const double> levels);

struct SweepPoint {
    double d1_mm = 0.0;
    double aperture_ratio = 1.0;
    double lhs = 0.0;
    double stderr_lhs = 0.0;
};

// Witness left-hand side versus the diameter of aperture A1; minimum at
// D1/D2 = lambda_A/lambda_B where the mode matching is exact.
std::vector<SweepPoint> mode_mismatch_sweep(const ExperimentConfig& config,
                                            std::span<const double> d1_values_mm, double d2_mm,
                                            double lambda_a_nm, double lambda_b_nm);

// Poisson goodness-of-fit p-value of the unconditional beam-B distribution.
double unconditional_poisson_pvalue(const PulseEnsemble& ensemble, Stage stage);

} // namespace bsv
