#include <doctest.h>

#include <cmath>
#include <random>

#include "bsv/gaussian_state.hpp"
#include "bsv/separable.hpp"
#include "bsv/stokes.hpp"
#include "test_util.hpp"

using namespace bsv;
using doctest::Approx;

TEST_CASE("witness on analytic states") {
    const StokesMoments ideal = stokes_moments_gaussian(make_singlet(0.3));
    const WitnessResult w = witness(ideal);
    CHECK(std::abs(w.lhs) < 1e-12);
    CHECK(w.violated);
    CHECK(w.threshold == 2.0);

    StokesMoments empty;
    CHECK_THROWS_AS((void)witness(empty), std::domain_error);

    const GaussianState lossy = apply_loss(make_singlet(0.2), LossMap::uniform(4, 0.57));
    const WitnessResult wl = witness(stokes_moments_gaussian(lossy));
    CHECK(wl.lhs == Approx(1.29).epsilon(1e-10));
    CHECK(wl.violated);
}

TEST_CASE("nrf: twin difference, loss law") {
    const StokesMoments m = stokes_moments_gaussian(make_singlet(0.4));
    CHECK(std::abs(nrf(m, 1)) < 1e-13);
    for (double eta : {0.3, 0.57, 0.95}) {
        const StokesMoments lm =
            stokes_moments_gaussian(apply_loss(make_singlet(0.4), LossMap::uniform(4, eta)));
        for (int i = 1; i <= 3; ++i) CHECK(nrf(lm, i) == Approx(1.0 - eta).epsilon(1e-11));
    }
}

TEST_CASE("witness basis invariance under equal rotations") {
    std::mt19937_64 rng(17);
    const StokesMoments base = stokes_moments_gaussian(make_singlet(0.25));
    for (int trial = 0; trial < 5; ++trial) {
        const auto u = PolarizationRotation::from_matrix(testutil::random_u2(rng));
        const StokesMoments rotated = stokes_moments_gaussian(apply_rotation(make_singlet(0.25), u));
        CHECK(std::abs(witness(rotated).lhs - witness(base).lhs) < 1e-10);
    }
}

TEST_CASE("aggregation") {
    const StokesMoments one = stokes_moments_gaussian(apply_loss(make_singlet(0.3), LossMap::uniform(4, 0.6)));
    std::vector<StokesMoments> copies(7, one);
    const StokesMoments total = aggregate_modes(copies);
    CHECK(witness(total).lhs == Approx(witness(one).lhs).epsilon(1e-13));
    CHECK(total.mean_s0 == Approx(7.0 * one.mean_s0));

    const StokesMoments single = aggregate_modes(std::vector<StokesMoments>{one});
    CHECK(single.mean_s0 == one.mean_s0);

    CHECK_THROWS_AS((void)aggregate_modes(std::vector<StokesMoments>{}), std::invalid_argument);

    // 50/50 mix of a violating pair and a coherent-level pair with equal S0.
    StokesMoments coherent;
    coherent.mean_s0 = one.mean_s0;
    coherent.var_s1 = coherent.var_s2 = coherent.var_s3 = one.mean_s0;
    const StokesMoments both = aggregate_modes(std::vector<StokesMoments>{one, coherent});
    CHECK(witness(both).lhs == Approx(0.5 * (witness(one).lhs + 3.0)).epsilon(1e-12));

    // Order independence.
    std::vector<StokesMoments> shuffled{coherent, one};
    CHECK(witness(aggregate_modes(shuffled)).lhs == Approx(witness(both).lhs).epsilon(1e-13));
}

TEST_CASE("separable components: analytic values") {
    SeparableEnsembleConfig coherent;
    coherent.components.push_back(
        {1.0, CoherentBeam{cd{3.0, 0.0}, cd{1.0, 1.0}}, CoherentBeam{cd{0.0, 2.0}, cd{1.5, 0.0}}});
    const StokesMoments cm = separable_moments_analytic(coherent);
    CHECK(witness(cm).lhs == Approx(3.0).epsilon(1e-12));

    SeparableEnsembleConfig thermal;
    thermal.components.push_back({1.0, ThermalBeam{4.0}, ThermalBeam{2.5}});
    const StokesMoments tm = separable_moments_analytic(thermal);
    CHECK(witness(tm).lhs > 3.0);

    SeparableEnsembleConfig bad;
    bad.components.push_back({0.4, ThermalBeam{1.0}, ThermalBeam{1.0}});
    CHECK_THROWS_AS((void)separable_moments_analytic(bad), std::invalid_argument);
}

TEST_CASE("sampled separable ensembles track the analytic moments") {
    SeparableEnsembleConfig config;
    config.components.push_back(
        {0.6, CoherentBeam{cd{4.0, 0.0}, cd{0.0, 3.0}}, CoherentBeam{cd{2.0, 1.0}, cd{0.0, 0.0}}});
    config.components.push_back({0.4, ThermalBeam{6.0}, ThermalBeam{9.0}});
    const StokesMoments analytic = separable_moments_analytic(config);
    const StokesMoments sampled = sample_separable_ensemble(config, 40000, 123);
    CHECK(sampled.has_stderr());
    for (int i = 1; i <= 3; ++i)
        CHECK(std::abs(sampled.var(i) - analytic.var(i)) < 5.0 * sampled.se_var(i));
    const WitnessResult w = witness(sampled);
    CHECK(w.lhs >= 2.0 - 3.0 * w.stderr_lhs);
}

TEST_CASE("separable floor holds for random mixtures") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        SeparableEnsembleConfig config;
        const int n = 1 + static_cast<int>(uni(rng) * 3.0);
        std::vector<double> w(static_cast<size_t>(n));
        double wsum = 0.0;
        for (auto& v : w) {
            v = 0.1 + uni(rng);
            wsum += v;
        }
        for (int j = 0; j < n; ++j) {
            auto beam = [&](void) -> BeamComponent {
                if (uni(rng) < 0.5) {
                    const double amp = 1.0 + 6.0 * uni(rng);
                    const double theta = 2.0 * std::numbers::pi * uni(rng);
                    const double phase = 2.0 * std::numbers::pi * uni(rng);
                    return CoherentBeam{amp * std::cos(theta),
                                        std::polar(amp * std::sin(theta), phase)};
                }
                return ThermalBeam{0.5 + 20.0 * uni(rng)};
            };
            config.components.push_back({w[static_cast<size_t>(j)] / wsum, beam(), beam()});
        }
        const WitnessResult exact = witness(separable_moments_analytic(config));
        CHECK(exact.lhs >= 2.0);

        const StokesMoments sampled = sample_separable_ensemble(config, 2000, 1000 + trial);
        const WitnessResult west = witness(sampled);
        CHECK(west.lhs >= 2.0 - 3.0 * west.stderr_lhs);
    }
}
