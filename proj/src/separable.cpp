#include "bsv/separable.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "bsv/rng.hpp"
#include "bsv/stats.hpp"

namespace bsv {

namespace {

void validate(const SeparableEnsembleConfig& config) {
    if (config.components.empty())
        throw std::invalid_argument("separable ensemble: no components");
    double wsum = 0.0;
    for (const auto& c : config.components) {
        if (c.weight < 0.0) throw std::invalid_argument("separable ensemble: negative weight");
        wsum += c.weight;
        if (const auto* th = std::get_if<ThermalBeam>(&c.beam_a); th && th->mean_photons < 0.0)
            throw std::invalid_argument("separable ensemble: negative thermal mean");
        if (const auto* th = std::get_if<ThermalBeam>(&c.beam_b); th && th->mean_photons < 0.0)
            throw std::invalid_argument("separable ensemble: negative thermal mean");
    }
    if (std::abs(wsum - 1.0) > 1e-9)
        throw std::invalid_argument("separable ensemble: weights must sum to 1");
}

// Single-beam Stokes moments.
StokesMoments beam_moments(const BeamComponent& beam) {
    StokesMoments m;
    if (const auto* c = std::get_if<CoherentBeam>(&beam)) {
        const double nh = std::norm(c->alpha_h);
        const double nv = std::norm(c->alpha_v);
        const cd cross = std::conj(c->alpha_h) * c->alpha_v;
        m.mean_s0 = nh + nv;
        m.mean_s1 = nh - nv;
        m.mean_s2 = 2.0 * cross.real();
        m.mean_s3 = 2.0 * cross.imag();
        m.var_s1 = m.var_s2 = m.var_s3 = m.mean_s0;
    } else {
        const double nu = std::get<ThermalBeam>(beam).mean_photons;
        m.mean_s0 = nu;
        m.var_s1 = m.var_s2 = m.var_s3 = nu + 0.5 * nu * nu;
    }
    return m;
}

StokesMoments product_moments(const SeparableComponent& c) {
    const StokesMoments a = beam_moments(c.beam_a);
    const StokesMoments b = beam_moments(c.beam_b);
    StokesMoments m;
    m.mean_s0 = a.mean_s0 + b.mean_s0;
    m.mean_s1 = a.mean_s1 + b.mean_s1;
    m.mean_s2 = a.mean_s2 + b.mean_s2;
    m.mean_s3 = a.mean_s3 + b.mean_s3;
    m.var_s1 = a.var_s1 + b.var_s1;
    m.var_s2 = a.var_s2 + b.var_s2;
    m.var_s3 = a.var_s3 + b.var_s3;
    return m;
}

// Jones amplitudes in the measurement basis of Stokes component i: the
// per-beam sample of S_i is the difference of the two channel counts.
std::pair<cd, cd> rotate_jones(const CoherentBeam& c, int i) {
    const cd h = c.alpha_h, v = c.alpha_v;
    const double r = std::numbers::sqrt2 / 2.0;
    const cd im(0.0, 1.0);
    switch (i) {
        case 1: return {h, v};
        case 2: return {r * (h + v), r * (h - v)};
        case 3: return {r * (h - im * v), r * (h + im * v)};
    }
    throw std::invalid_argument("rotate_jones: index must be 1..3");
}

} // namespace

StokesMoments separable_moments_analytic(const SeparableEnsembleConfig& config) {
    validate(config);
    std::vector<StokesMoments> parts;
    std::vector<double> weights;
    parts.reserve(config.components.size());
    for (const auto& c : config.components) {
        parts.push_back(product_moments(c));
        weights.push_back(c.weight);
    }
    return mix_moments(parts, weights);
}

StokesMoments sample_separable_ensemble(const SeparableEnsembleConfig& config, long long pulses,
                                        uint64_t seed) {
    validate(config);
    if (pulses < 2) throw std::invalid_argument("sample_separable_ensemble: need >= 2 pulses");

    std::vector<double> cumw;
    double acc = 0.0;
    for (const auto& c : config.components) {
        acc += c.weight;
        cumw.push_back(acc);
    }

    // One ensemble per Stokes component; S0 pooled over all of them.
    std::vector<double> s_samples[3];
    std::vector<double> s0_samples;
    for (int i = 0; i < 3; ++i) s_samples[i].reserve(static_cast<size_t>(pulses));
    s0_samples.reserve(static_cast<size_t>(3 * pulses));

    for (int basis = 1; basis <= 3; ++basis) {
        for (long long p = 0; p < pulses; ++p) {
            auto eng = pulse_stream(seed, static_cast<uint64_t>(p), static_cast<uint32_t>(basis));
            std::uniform_real_distribution<double> uni(0.0, 1.0);
            const double u = uni(eng) * acc;
            size_t j = 0;
            while (j + 1 < cumw.size() && u > cumw[j]) ++j;
            const auto& comp = config.components[j];

            double diff = 0.0, total = 0.0;
            for (const BeamComponent* beam : {&comp.beam_a, &comp.beam_b}) {
                long long c1 = 0, c2 = 0;
                if (const auto* coh = std::get_if<CoherentBeam>(beam)) {
                    const auto [b1, b2] = rotate_jones(*coh, basis);
                    const double m1 = std::norm(b1), m2 = std::norm(b2);
                    if (m1 > 0.0) c1 = std::poisson_distribution<long long>(m1)(eng);
                    if (m2 > 0.0) c2 = std::poisson_distribution<long long>(m2)(eng);
                } else {
                    // Unpolarized thermal light looks the same in every basis.
                    const double half = 0.5 * std::get<ThermalBeam>(*beam).mean_photons;
                    if (half > 0.0) {
                        std::geometric_distribution<long long> geo(1.0 / (1.0 + half));
                        c1 = geo(eng);
                        c2 = geo(eng);
                    }
                }
                diff += static_cast<double>(c1 - c2);
                total += static_cast<double>(c1 + c2);
            }
            s_samples[basis - 1].push_back(diff);
            s0_samples.push_back(total);
        }
    }

    StokesMoments m;
    const SampleStats st0 = sample_stats(s0_samples);
    m.mean_s0 = st0.mean;
    m.se_mean_s0 = st0.se_mean;
    const SampleStats st1 = sample_stats(s_samples[0]);
    const SampleStats st2 = sample_stats(s_samples[1]);
    const SampleStats st3 = sample_stats(s_samples[2]);
    m.mean_s1 = st1.mean;
    m.mean_s2 = st2.mean;
    m.mean_s3 = st3.mean;
    m.var_s1 = st1.variance;
    m.var_s2 = st2.variance;
    m.var_s3 = st3.variance;
    m.se_var_s1 = st1.se_variance;
    m.se_var_s2 = st2.se_variance;
    m.se_var_s3 = st3.se_variance;
    m.se_var_s1_normal = st1.se_variance_normal;
    m.se_var_s2_normal = st2.se_variance_normal;
    m.se_var_s3_normal = st3.se_variance_normal;
    return m;
}

} // namespace bsv
