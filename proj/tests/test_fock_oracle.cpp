#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bsv/fock_state.hpp"
#include "test_util.hpp"

using namespace bsv;
using doctest::Approx;

TEST_CASE("vacuum and small-gain amplitudes") {
    const FockState vac = build_singlet(0.0, 4);
    CHECK(vac.amplitude(0, 0, 0, 0) == cd{1.0, 0.0});
    CHECK(vac.norm_squared() == Approx(1.0));

    const double g = 0.1;
    const FockState s = build_singlet(g, 12);
    const double t = std::tanh(g);
    const double c2 = std::cosh(g) * std::cosh(g);
    CHECK(s.amplitude(1, 0, 0, 1).real() == Approx(t / c2).epsilon(1e-14));
    CHECK(s.amplitude(0, 1, 1, 0).real() == Approx(-t / c2).epsilon(1e-14));
    CHECK(s.amplitude(2, 1, 1, 2).real() == Approx(-t * t * t / c2).epsilon(1e-14));
}

TEST_CASE("twin correlation: only (n,m,m,n) components exist") {
    const FockState s = build_singlet(0.25, 8);
    for (int a = 0; a <= 8; ++a)
        for (int b = 0; b <= 8; ++b)
            for (int c = 0; c <= 8; ++c)
                for (int d = 0; d <= 8; ++d)
                    if (a != d || b != c) CHECK(std::abs(s.amplitude(a, b, c, d)) == 0.0);
}

TEST_CASE("norm deficit follows the analytic tail") {
    const FockState s = build_singlet(0.3, 40);
    CHECK(1.0 - s.norm_squared() < 1e-12);
    CHECK(1.0 - s.norm_squared() <= s.tail_bound() + 1e-15);

    // The N-photon sector carries (N+1) tanh^{2N} / cosh^4: the two
    // geometric factors and the combined expansion agree.
    const double g = 0.25;
    const FockState f = build_singlet(g, 12);
    const double x = std::tanh(g) * std::tanh(g);
    const double c4 = std::pow(std::cosh(g), 4);
    for (int total = 0; total <= 6; ++total) {
        double sector = 0.0;
        for (int n = 0; n <= total; ++n) sector += std::norm(f.amplitude(n, total - n, total - n, n));
        CHECK(sector == Approx((total + 1) * std::pow(x, total) / c4).epsilon(1e-12));
    }
}

TEST_CASE("truncation control") {
    CHECK_THROWS_AS((void)build_singlet(1.2, 5), TruncationError);
    const int n = min_nmax_for_tail(0.3, 1e-12);
    CHECK(truncation_tail(0.3, n) < 1e-12);
    CHECK(truncation_tail(0.3, n - 1) >= 1e-12);
    CHECK(n <= 40);
}

TEST_CASE("singlet moments vanish; vacuum moments vanish") {
    const FockState s = build_singlet(0.2, min_nmax_for_tail(0.2, 1e-13));
    const StokesMoments m = stokes_moments_exact(s);
    CHECK(m.mean_s0 == Approx(4.0 * std::pow(std::sinh(0.2), 2)).epsilon(1e-10));
    for (double v : {m.mean_s1, m.mean_s2, m.mean_s3, m.var_s1, m.var_s2, m.var_s3})
        CHECK(std::abs(v) < 1e-10);

    const StokesMoments vac = stokes_moments_exact(build_singlet(0.0, 2));
    CHECK(vac.mean_s0 == Approx(0.0));
    CHECK(vac.var_s1 == Approx(0.0));
}

TEST_CASE("single-beam operator identity S^2 = S0(S0+2)") {
    const FockState s = build_singlet(0.2, min_nmax_for_tail(0.2, 1e-13));
    for (int beam : {0, 1})
        CHECK(fock_beam_stokes_square_sum(s, beam) ==
              Approx(fock_beam_s0_s0p2(s, beam)).epsilon(1e-10));
}

TEST_CASE("interferometer states: S2 suppression at phi = pi, marginals phase-free") {
    const int n_max = min_nmax_for_tail(0.2, 1e-13);
    const StokesMoments at_pi = stokes_moments_exact(build_phi_state(0.2, std::numbers::pi, n_max));
    const StokesMoments at_zero = stokes_moments_exact(build_phi_state(0.2, 0.0, n_max));
    CHECK(at_pi.var_s2 < at_zero.var_s2);
    CHECK(std::abs(at_pi.var_s2) < 1e-10);

    // Photon-number marginal of channel BH must not depend on phi.
    auto marginal_bh = [&](double phi) {
        const FockState f = build_phi_state(0.25, phi, 8);
        std::vector<double> p(9, 0.0);
        for (int a = 0; a <= 8; ++a)
            for (int b = 0; b <= 8; ++b)
                for (int c = 0; c <= 8; ++c)
                    for (int d = 0; d <= 8; ++d) p[c] += std::norm(f.amplitude(a, b, c, d));
        return p;
    };
    const auto p0 = marginal_bh(0.0);
    const auto p1 = marginal_bh(1.3);
    for (size_t k = 0; k < p0.size(); ++k) CHECK(p0[k] == Approx(p1[k]).epsilon(1e-13));

    CHECK(build_phi_state(0.0, 0.0, 2).amplitude(0, 0, 0, 0) == cd{1.0, 0.0});
}

TEST_CASE("rotations: identity, joint invariance, triplet conversion chain") {
    const int n_max = min_nmax_for_tail(0.25, 1e-13);
    const FockState s = build_singlet(0.25, n_max);

    const auto id = PolarizationRotation::from_matrix(CMat::identity(2));
    CHECK(testutil::table_diff_up_to_phase(s, apply_rotation_fock(s, id)) < 1e-13);

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 3; ++trial) {
        const auto u = PolarizationRotation::from_matrix(testutil::random_su2(rng));
        const FockState rotated = apply_rotation_fock(s, u);
        CHECK(std::abs(rotated.norm_squared() - s.norm_squared()) < 1e-12);
        CHECK(testutil::table_diff_up_to_phase(s, rotated) < 1e-12);
    }

    // 45 deg on both beams maps the minus-signed interferometer state onto
    // the plus-pairing twin state; a pi phase on AV then gives the singlet.
    const FockState phi_minus = build_phi_state(0.25, std::numbers::pi, n_max);
    const FockState rotated = apply_rotation_fock(phi_minus, PolarizationRotation::linear(std::numbers::pi / 4.0));
    const double t = std::tanh(0.25);
    const double c2 = std::cosh(0.25) * std::cosh(0.25);
    CHECK(std::abs(rotated.amplitude(1, 0, 0, 1) - cd{t / c2}) < 1e-12);
    CHECK(std::abs(rotated.amplitude(0, 1, 1, 0) - cd{t / c2}) < 1e-12); // plus sign: not the singlet
    const FockState converted =
        apply_mode_phases_fock(rotated, std::array<double, 4>{0.0, std::numbers::pi, 0.0, 0.0});
    CHECK(testutil::table_diff_up_to_phase(build_singlet(0.25, n_max), converted) < 1e-12);
}

TEST_CASE("photon covariances: twin difference is noiseless") {
    const FockState s = build_singlet(0.15, min_nmax_for_tail(0.15, 1e-13));
    const double var_ah = fock_photon_covariance(s, kAH, kAH);
    const double var_bv = fock_photon_covariance(s, kBV, kBV);
    const double cov = fock_photon_covariance(s, kAH, kBV);
    CHECK(var_ah == Approx(var_bv).epsilon(1e-12));
    CHECK(std::abs(var_ah + var_bv - 2.0 * cov) < 1e-12);
}

TEST_CASE("schmidt spectrum") {
    const auto vac = schmidt_spectrum(0.0, 8);
    CHECK(vac[0] == Approx(1.0));
    CHECK(vac[1] == Approx(0.0));
    CHECK(schmidt_number_of_spectrum(vac) == Approx(1.0));

    const auto lam = schmidt_spectrum(0.33, 60);
    const double n0 = std::pow(std::sinh(0.33), 2);
    CHECK(schmidt_number_of_spectrum(lam) == Approx(1.0 + 2.0 * n0).epsilon(1e-9));

    double sum_np1 = 0.0, sum_n = 0.0;
    for (size_t n = 0; n < lam.size(); ++n) {
        sum_np1 += (static_cast<double>(n) + 1.0) * lam[n];
        sum_n += static_cast<double>(n) * lam[n];
    }
    CHECK(sum_np1 == Approx(std::pow(std::cosh(0.33), 2)).epsilon(1e-12));
    CHECK(2.0 * sum_n == Approx(2.0 * n0).epsilon(1e-12)); // mean photons of the pair
}
