#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bsv/gaussian_state.hpp"
#include "bsv/optics_plate.hpp"
#include "bsv/stats.hpp"
#include "bsv/stokes.hpp"

using namespace bsv;
using doctest::Approx;

namespace {
const double kPi = std::numbers::pi;
}

TEST_CASE("quartz indices: positive uniaxial, normal dispersion, sane values") {
    for (double lam : {635e-9, 805e-9}) {
        const double no = refractive_index(lam, Ray::Ordinary);
        const double ne = refractive_index(lam, Ray::Extraordinary);
        CHECK(ne > no);
        CHECK(no > 1.0);
        CHECK(ne < 3.0);
    }
    const double dn = refractive_index(635e-9, Ray::Extraordinary) -
                      refractive_index(635e-9, Ray::Ordinary);
    CHECK(dn == Approx(0.009).epsilon(0.06));

    double prev_o = 10.0, prev_e = 10.0;
    for (double lam = 0.4e-6; lam <= 1.1e-6; lam += 0.05e-6) {
        const double no = refractive_index(lam, Ray::Ordinary);
        const double ne = refractive_index(lam, Ray::Extraordinary);
        CHECK(no < prev_o);
        CHECK(ne < prev_e);
        prev_o = no;
        prev_e = ne;
    }
    CHECK_THROWS_AS((void)refractive_index(0.2e-6, Ray::Ordinary), std::invalid_argument);
    CHECK_THROWS_AS((void)refractive_index(2.0e-6, Ray::Ordinary), std::invalid_argument);
}

TEST_CASE("o-e delays of the 170 um plate") {
    const PlateSpec spec;
    const double da = oe_delay(spec, spec.lambda_a) / kPi;
    const double db = oe_delay(spec, spec.lambda_b) / kPi;
    CHECK(std::abs(da - 4.854) < 0.03);
    CHECK(std::abs(db - 3.774) < 0.03);
    CHECK(std::abs((da - db) - 1.08) < 0.04);
}

TEST_CASE("plate phases feed the mode-phase transform") {
    PlateSpec zero;
    zero.thickness = 1e-30;
    for (double p : plate_mode_phases(zero)) CHECK(p == Approx(0.0).epsilon(1e-12));

    const PlateSpec spec;
    const auto phases = plate_mode_phases(spec);
    // Extraordinary rides the V modes; quartz is positive uniaxial.
    CHECK(phases[1] - phases[0] == Approx(oe_delay(spec, spec.lambda_a)).epsilon(1e-12));
    CHECK(phases[3] - phases[2] == Approx(oe_delay(spec, spec.lambda_b)).epsilon(1e-12));

    // Engine-level identity: the relative phase between the two anomalous
    // entries moves by exactly the delay difference.
    const double g = 0.2;
    const GaussianState converted =
        apply_mode_phases(make_triplet(TripletKind::PsiPlus, g), phases);
    const cd m_hv = converted.anomalous_matrix()(kAH, kBV);
    const cd m_vh = converted.anomalous_matrix()(kAV, kBH);
    const double relative = std::arg(m_vh / m_hv);
    const double expected = oe_delay(spec, spec.lambda_a) - oe_delay(spec, spec.lambda_b);
    CHECK(std::abs(std::remainder(relative - expected, 2.0 * kPi)) < 1e-10);
}

TEST_CASE("conversion residual and witness bound") {
    const PlateSpec spec;
    const double residual = conversion_residual(spec);
    CHECK(std::abs(residual) < 0.12 * kPi);

    const double g = 0.2;
    const GaussianState converted =
        apply_mode_phases(make_triplet(TripletKind::PsiPlus, g), plate_mode_phases(spec));
    const WitnessResult w = witness(stokes_moments_gaussian(converted));
    CHECK(w.lhs == Approx(converted_witness_bound(g, residual)).epsilon(1e-10));
    CHECK(w.lhs < 2.0);
    CHECK(w.violated);

    // Conversion quality degrades smoothly and monotonically in |residual|.
    double prev = -1.0;
    for (double r : {0.0, 0.02, 0.05, 0.1, 0.2}) {
        const double b = converted_witness_bound(g, r * kPi);
        CHECK(b > prev);
        prev = b;
    }
}

TEST_CASE("phase scan: cosine shape, minimum at pi, symmetry") {
    std::vector<double> grid;
    for (int i = 0; i <= 60; ++i) grid.push_back(2.0 * kPi * i / 60.0);
    const auto rows = mz_phase_scan(0.2, grid, 0.0);

    // Least-squares fit of a + b cos(phi).
    std::vector<double> x, y;
    for (const auto& r : rows) {
        x.push_back(std::cos(r.phi));
        y.push_back(r.nrf_s2);
    }
    const LinearFit fit = linear_fit(x, y);
    CHECK(fit.residual_rms < 1e-10);
    const double c2 = std::pow(std::cosh(0.2), 2);
    CHECK(fit.intercept == Approx(c2).epsilon(1e-10));
    CHECK(fit.slope == Approx(c2).epsilon(1e-10));

    double min_val = 1e300;
    double min_phi = -1.0;
    for (const auto& r : rows) {
        if (r.nrf_s2 < min_val) {
            min_val = r.nrf_s2;
            min_phi = r.phi;
        }
        CHECK(r.nrf_min <= r.nrf_s2 + 1e-12);
        CHECK(r.nrf_max >= r.nrf_s2 - 1e-12);
    }
    CHECK(min_phi == Approx(kPi).epsilon(1e-12));
    CHECK(min_val == Approx(0.0).epsilon(1e-12));

    for (size_t i = 0; i < rows.size(); ++i) {
        const auto& mirror = rows[rows.size() - 1 - i];
        CHECK(rows[i].nrf_s2 == Approx(mirror.nrf_s2).epsilon(1e-11));
    }
}

TEST_CASE("path-length offset collapses the interference envelope") {
    const std::vector<double> probe{0.0, kPi};
    const auto balanced = mz_phase_scan(0.2, probe, 0.0);
    CHECK(balanced.front().nrf_max - balanced.front().nrf_min > 1.0);

    const double c_tau = 299792458.0 * 5e-12; // 1.5 mm coherence length
    const auto detuned = mz_phase_scan(0.2, probe, 10.0 * c_tau);
    CHECK(detuned.front().nrf_max - detuned.front().nrf_min < 1e-10);
    // Both envelope branches sit at the incoherent midpoint.
    CHECK(detuned.front().nrf_min == Approx(std::pow(std::cosh(0.2), 2)).epsilon(1e-10));
}
