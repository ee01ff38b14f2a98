#include "bsv/photon_mc.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

#include "bsv/stats.hpp"

namespace bsv {

namespace {

// Stream purposes within one pulse.
constexpr uint32_t kGenerate = 0;  // + basis 1..3
constexpr uint32_t kDetect = 8;    // + basis
constexpr uint32_t kSynthetic = 32;
constexpr uint32_t kCalib = 64;    // + level index

// Sum of `shape` independent Bose-Einstein modes of mean `nbar` each:
// negative binomial, drawn as a gamma-Poisson mixture. Real-valued shape.
long long negative_binomial(Philox4x32& eng, double shape, double nbar) {
    if (shape <= 0.0 || nbar <= 0.0) return 0;
    std::gamma_distribution<double> gamma(shape, nbar);
    const double lambda = gamma(eng);
    if (lambda <= 0.0) return 0;
    return std::poisson_distribution<long long>(lambda)(eng);
}

} // namespace

void ExperimentConfig::validate() const {
    if (!std::isfinite(gamma) || gamma < 0.0) throw std::invalid_argument("config: gamma must be >= 0");
    if (m_pairs < 1.0) throw std::invalid_argument("config: m_pairs must be >= 1");
    if (pulses < 1) throw std::invalid_argument("config: pulses must be >= 1");
    for (double e : eta)
        if (!(e >= 0.0 && e <= 1.0)) throw std::invalid_argument("config: eta outside [0, 1]");
    if (pump_jitter < 0.0) throw std::invalid_argument("config: pump_jitter must be >= 0");
    if (electronic_noise < 0.0) throw std::invalid_argument("config: electronic_noise must be >= 0");
    if (aperture_ratio < 0.0) throw std::invalid_argument("config: aperture_ratio must be >= 0");
    if (threads < 1) throw std::invalid_argument("config: threads must be >= 1");
    if (source == Source::Coherent && coherent_mean_per_channel < 0.0)
        throw std::invalid_argument("config: coherent mean must be >= 0");
}

double ExperimentConfig::photons_per_mode() const {
    const double sh = std::sinh(gamma);
    return sh * sh;
}

double ExperimentConfig::mean_generated_per_pulse() const {
    if (source == Source::Coherent) return 4.0 * coherent_mean_per_channel;
    const double r = aperture_ratio;
    const double modes = (std::min(r, 1.0) * 2.0 + std::max(0.0, r - 1.0) + std::max(0.0, 1.0 - r)) * m_pairs;
    return 2.0 * modes * photons_per_mode();
}

double ExperimentConfig::uniform_eta() const {
    return 0.25 * (eta[0] + eta[1] + eta[2] + eta[3]);
}

PulseSample sample_pulse(const ExperimentConfig& config, uint64_t pulse_index, int basis) {
    PulseSample s;
    auto eng = pulse_stream(config.seed, pulse_index, kGenerate + static_cast<uint32_t>(basis));

    if (config.source == ExperimentConfig::Source::Coherent) {
        const double mu = config.coherent_mean_per_channel;
        if (mu > 0.0) {
            std::poisson_distribution<long long> poisson(mu);
            for (auto& c : s.generated) c = poisson(eng);
        }
        return s;
    }

    double gain = config.gamma;
    if (config.pump_jitter > 0.0) {
        std::normal_distribution<double> normal(0.0, config.pump_jitter);
        gain *= std::max(0.0, 1.0 + normal(eng));
    }
    const double sh = std::sinh(gain);
    const double nbar = sh * sh;

    // Beam A accepts r * m_pairs modes, beam B the fixed m_pairs; the
    // min(r,1) fraction is pair-matched, the remainder of the wider
    // acceptance arrives unpaired and thermal.
    const double r = config.aperture_ratio;
    const double matched = std::min(r, 1.0) * config.m_pairs;
    const double extra_a = std::max(0.0, r - 1.0) * config.m_pairs;
    const double extra_b = std::max(0.0, 1.0 - r) * config.m_pairs;

    const long long twin_h = negative_binomial(eng, matched, nbar);
    const long long twin_v = negative_binomial(eng, matched, nbar);
    s.generated[kAH] = twin_h;
    s.generated[kBV] = twin_h;
    s.generated[kAV] = twin_v;
    s.generated[kBH] = twin_v;

    if (extra_a > 0.0) {
        s.generated[kAH] += negative_binomial(eng, extra_a, nbar);
        s.generated[kAV] += negative_binomial(eng, extra_a, nbar);
    }
    if (extra_b > 0.0) {
        s.generated[kBH] += negative_binomial(eng, extra_b, nbar);
        s.generated[kBV] += negative_binomial(eng, extra_b, nbar);
    }
    return s;
}

void apply_detection(PulseSample& sample, const ExperimentConfig& config, Philox4x32& rng) {
    for (int c = 0; c < 4; ++c) {
        const long long n = sample.generated[c];
        const double e = config.eta[c];
        if (n == 0 || e == 0.0) {
            sample.detected[c] = 0;
        } else if (e == 1.0) {
            sample.detected[c] = n;
        } else {
            sample.detected[c] = std::binomial_distribution<long long>(n, e)(rng);
        }
    }
    sample.readout[0] = static_cast<double>(sample.detected[kAH] + sample.detected[kBH]);
    sample.readout[1] = static_cast<double>(sample.detected[kAV] + sample.detected[kBV]);
    if (config.electronic_noise > 0.0) {
        std::normal_distribution<double> noise(0.0, config.electronic_noise);
        sample.readout[0] += noise(rng);
        sample.readout[1] += noise(rng);
    }
}

PulseEnsemble simulate_ensemble(const ExperimentConfig& config, int basis) {
    config.validate();
    PulseEnsemble ens;
    ens.basis = basis;
    ens.pulses.resize(static_cast<size_t>(config.pulses));

    auto worker = [&](long long begin, long long end) {
        for (long long p = begin; p < end; ++p) {
            PulseSample s = sample_pulse(config, static_cast<uint64_t>(p), basis);
            auto det = pulse_stream(config.seed, static_cast<uint64_t>(p), kDetect + static_cast<uint32_t>(basis));
            apply_detection(s, config, det);
            ens.pulses[static_cast<size_t>(p)] = s;
        }
    };

    const int nt = std::min<long long>(config.threads, config.pulses);
    if (nt <= 1) {
        worker(0, config.pulses);
    } else {
        std::vector<std::thread> pool;
        const long long chunk = (config.pulses + nt - 1) / nt;
        for (int t = 0; t < nt; ++t) {
            const long long b = t * chunk;
            const long long e = std::min<long long>(config.pulses, b + chunk);
            if (b < e) pool.emplace_back(worker, b, e);
        }
        for (auto& th : pool) th.join();
    }
    return ens;
}

StokesRun simulate_stokes_run(const ExperimentConfig& config) {
    StokesRun run;
    run.config = config;
    for (int basis = 1; basis <= 3; ++basis)
        run.basis_ensembles[static_cast<size_t>(basis - 1)] = simulate_ensemble(config, basis);
    return run;
}

StokesMoments estimate_stokes(const StokesRun& run) {
    const auto& config = run.config;
    if (config.pulses < 2) throw std::invalid_argument("estimate_stokes: need >= 2 pulses");

    const double noise_var = 2.0 * config.electronic_noise * config.electronic_noise;
    StokesMoments m;
    std::vector<double> s0;
    s0.reserve(static_cast<size_t>(3 * config.pulses));

    for (int basis = 1; basis <= 3; ++basis) {
        const auto& ens = run.basis_ensembles[static_cast<size_t>(basis - 1)];
        std::vector<double> diff;
        diff.reserve(ens.pulses.size());
        for (const auto& p : ens.pulses) {
            diff.push_back(p.readout[0] - p.readout[1]);
            s0.push_back(p.readout[0] + p.readout[1]);
        }
        const SampleStats st = sample_stats(diff);
        const double var = st.variance - noise_var; // electronic noise subtracted
        switch (basis) {
            case 1:
                m.mean_s1 = st.mean;
                m.var_s1 = var;
                m.se_var_s1 = st.se_variance;
                m.se_var_s1_normal = st.se_variance_normal;
                break;
            case 2:
                m.mean_s2 = st.mean;
                m.var_s2 = var;
                m.se_var_s2 = st.se_variance;
                m.se_var_s2_normal = st.se_variance_normal;
                break;
            case 3:
                m.mean_s3 = st.mean;
                m.var_s3 = var;
                m.se_var_s3 = st.se_variance;
                m.se_var_s3_normal = st.se_variance_normal;
                break;
        }
    }
    const SampleStats st0 = sample_stats(s0);
    m.mean_s0 = st0.mean;
    m.se_mean_s0 = st0.se_mean;
    return m;
}

long long select_count(const PulseSample& s, const ChannelSel& sel) {
    const auto& a = sel.stage == Stage::Generated ? s.generated : s.detected;
    switch (sel.kind) {
        case ChannelSel::Kind::AH: return a[kAH];
        case ChannelSel::Kind::AV: return a[kAV];
        case ChannelSel::Kind::BH: return a[kBH];
        case ChannelSel::Kind::BV: return a[kBV];
        case ChannelSel::Kind::BeamA: return a[kAH] + a[kAV];
        case ChannelSel::Kind::BeamB: return a[kBH] + a[kBV];
    }
    throw std::invalid_argument("select_count: bad channel");
}

Histogram conditional_distribution(const PulseEnsemble& ensemble, const ChannelSel& value,
                                   const ChannelSel& condition, const CountWindow& window) {
    if (window.hi < window.lo) throw std::invalid_argument("conditional_distribution: empty window");
    std::vector<long long> kept;
    for (const auto& p : ensemble.pulses) {
        const long long c = select_count(p, condition);
        if (c >= window.lo && c <= window.hi) kept.push_back(select_count(p, value));
    }
    if (kept.empty()) throw std::invalid_argument("conditional_distribution: no pulses pass the window");
    Histogram h = Histogram::build(kept, Histogram::fd_bin_width(kept));
    h.low_statistics = kept.size() < 100;
    return h;
}

MeasureRResult measure_r_details(const PulseEnsemble& ensemble, const ExperimentConfig& config) {
    if (ensemble.pulses.empty()) throw std::invalid_argument("measure_r: empty ensemble");
    MeasureRResult res;

    // Unconditional width of the detected beam-B distribution. With pump
    // jitter the distribution is broadened by the excess noise, so the
    // numerator comes from a shot-noise-limited source of the same mean.
    std::vector<long long> beam_b;
    beam_b.reserve(ensemble.pulses.size());
    double mean_b = 0.0;
    for (const auto& p : ensemble.pulses) {
        beam_b.push_back(select_count(p, {ChannelSel::Kind::BeamB, Stage::Detected}));
        mean_b += static_cast<double>(beam_b.back());
    }
    mean_b /= static_cast<double>(beam_b.size());

    if (config.pump_jitter > 0.0) {
        std::vector<long long> synthetic(beam_b.size());
        for (size_t p = 0; p < synthetic.size(); ++p) {
            auto eng = pulse_stream(config.seed, static_cast<uint64_t>(p), kSynthetic);
            synthetic[p] = mean_b > 0.0 ? std::poisson_distribution<long long>(mean_b)(eng) : 0;
        }
        res.unconditional = Histogram::build(synthetic, Histogram::fd_bin_width(synthetic));
    } else {
        res.unconditional = Histogram::build(beam_b, Histogram::fd_bin_width(beam_b));
    }
    res.fwhm_unconditional = res.unconditional.fwhm();

    // Condition on the pre-detection twin counts of beam A; loss then
    // broadens the conditional distribution of the detected beam B.
    double mean_gen_a = 0.0;
    for (const auto& p : ensemble.pulses)
        mean_gen_a += static_cast<double>(select_count(p, {ChannelSel::Kind::BeamA, Stage::Generated}));
    mean_gen_a /= static_cast<double>(ensemble.pulses.size());

    const double eta_b = 0.5 * (config.eta[kBH] + config.eta[kBV]);
    const double cond_sigma = std::sqrt(std::max(0.0, eta_b * (1.0 - eta_b) * mean_gen_a));
    const long long center = std::llround(mean_gen_a);

    // Window narrow against the conditional width (so it adds no width of
    // its own) but wide enough to post-select a usable sample; widen once
    // if the pulse budget leaves the narrow window starved.
    const long long target = std::max<long long>(100, static_cast<long long>(ensemble.pulses.size()) / 150);
    long long half_width = static_cast<long long>(std::floor(0.25 * cond_sigma));
    for (int attempt = 0; attempt < 2; ++attempt) {
        res.window = CountWindow{center - half_width, center + half_width};
        long long kept = 0;
        for (const auto& p : ensemble.pulses) {
            const long long c = select_count(p, {ChannelSel::Kind::BeamA, Stage::Generated});
            if (c >= res.window.lo && c <= res.window.hi) ++kept;
        }
        if (kept >= target || half_width >= static_cast<long long>(0.6 * cond_sigma)) break;
        half_width = static_cast<long long>(std::floor(0.6 * cond_sigma));
    }

    res.conditional = conditional_distribution(ensemble, {ChannelSel::Kind::BeamB, Stage::Detected},
                                               {ChannelSel::Kind::BeamA, Stage::Generated}, res.window);
    res.fwhm_conditional = res.conditional.fwhm();
    res.r = res.fwhm_unconditional / res.fwhm_conditional;
    return res;
}

double measure_r(const PulseEnsemble& ensemble, const ExperimentConfig& config) {
    return measure_r_details(ensemble, config).r;
}

CalibrationFit calibrate_shot_noise(const ExperimentConfig& config, std::span<const double> levels) {
    config.validate();
    if (levels.size() < 3) throw std::invalid_argument("calibrate_shot_noise: need >= 3 levels");
    const auto [lo, hi] = std::minmax_element(levels.begin(), levels.end());
    if (!(*hi - *lo > 1e-9 * *hi))
        throw std::runtime_error("calibrate_shot_noise: degenerate levels, fit failed");

    std::vector<double> xs, ys;
    CalibrationFit fit;
    for (size_t lvl = 0; lvl < levels.size(); ++lvl) {
        const double mu = levels[lvl];
        if (!(mu > 0.0)) throw std::invalid_argument("calibrate_shot_noise: levels must be > 0");
        std::vector<double> sum, diff;
        sum.reserve(static_cast<size_t>(config.pulses));
        diff.reserve(static_cast<size_t>(config.pulses));
        for (long long p = 0; p < config.pulses; ++p) {
            auto eng = pulse_stream(config.seed, static_cast<uint64_t>(p), kCalib + static_cast<uint32_t>(lvl));
            const double eta_h = 0.5 * (config.eta[kAH] + config.eta[kBH]);
            const double eta_v = 0.5 * (config.eta[kAV] + config.eta[kBV]);
            const long long d1 = std::poisson_distribution<long long>(0.5 * mu * eta_h)(eng);
            const long long d2 = std::poisson_distribution<long long>(0.5 * mu * eta_v)(eng);
            double r1 = static_cast<double>(d1);
            double r2 = static_cast<double>(d2);
            if (config.electronic_noise > 0.0) {
                std::normal_distribution<double> noise(0.0, config.electronic_noise);
                r1 += noise(eng);
                r2 += noise(eng);
            }
            sum.push_back(r1 + r2);
            diff.push_back(r1 - r2);
        }
        const SampleStats ssum = sample_stats(sum);
        const SampleStats sdiff = sample_stats(diff);
        xs.push_back(ssum.mean);
        ys.push_back(sdiff.variance);
        fit.points.push_back({ssum.mean, sdiff.variance});
    }

    LinearFit lf;
    try {
        lf = linear_fit(xs, ys);
    } catch (const std::invalid_argument&) {
        throw std::runtime_error("calibrate_shot_noise: degenerate levels, fit failed");
    }
    fit.alpha = lf.slope;
    fit.intercept = lf.intercept;
    fit.residual_rms = lf.residual_rms;
    return fit;
}

std::vector<SweepPoint> mode_mismatch_sweep(const ExperimentConfig& config,
                                            std::span<const double> d1_values_mm, double d2_mm,
                                            double lambda_a_nm, double lambda_b_nm) {
    config.validate();
    if (d1_values_mm.empty()) throw std::invalid_argument("mode_mismatch_sweep: no aperture values");
    if (!(d2_mm > 0.0) || !(lambda_a_nm > 0.0) || !(lambda_b_nm > 0.0))
        throw std::invalid_argument("mode_mismatch_sweep: bad geometry");

    std::vector<SweepPoint> out;
    out.reserve(d1_values_mm.size());
    for (size_t i = 0; i < d1_values_mm.size(); ++i) {
        ExperimentConfig point = config;
        point.aperture_ratio = (d1_values_mm[i] / lambda_a_nm) / (d2_mm / lambda_b_nm);
        point.seed = splitmix64(config.seed + i);
        const StokesMoments moments = estimate_stokes(simulate_stokes_run(point));
        const WitnessResult w = witness(moments);
        out.push_back({d1_values_mm[i], point.aperture_ratio, w.lhs, w.stderr_lhs});
    }
    return out;
}

double unconditional_poisson_pvalue(const PulseEnsemble& ensemble, Stage stage) {
    std::vector<long long> samples;
    samples.reserve(ensemble.pulses.size());
    for (const auto& p : ensemble.pulses)
        samples.push_back(select_count(p, {ChannelSel::Kind::BeamB, stage}));
    return poisson_chi_square_pvalue(samples);
}

} // namespace bsv
