#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bsv/fock_state.hpp"
#include "bsv/schmidt.hpp"

using namespace bsv;
using doctest::Approx;

TEST_CASE("single-pair Schmidt number") {
    CHECK(schmidt_single(0.0) == 1.0);
    CHECK(schmidt_single(0.33) == Approx(1.2258).epsilon(2e-4));
    // Truncated-spectrum ratio agrees with the closed form.
    const auto lam = schmidt_spectrum(0.33, 60);
    CHECK(schmidt_single(0.33) == Approx(schmidt_number_of_spectrum(lam)).epsilon(1e-9));
}

TEST_CASE("product form stays in the log domain") {
    CHECK(schmidt_product_log(0.0, 5) == Approx(0.0));
    CHECK(schmidt_product_log(0.2, 1) == Approx(2.0 * std::log(schmidt_single(0.2))).epsilon(1e-13));
    const double ln_k = schmidt_product_log(0.33, 1000000);
    CHECK(ln_k == Approx(2.0e6 * std::log(1.0 + 2.0 * std::pow(std::sinh(0.33), 2))).epsilon(1e-12));
    CHECK(ln_k > 4.0e5); // far beyond any floating-point linear value
    CHECK_THROWS_AS((void)schmidt_product_log(0.2, 0), std::invalid_argument);
}

TEST_CASE("poisson-spectrum Schmidt number and its asymptote") {
    CHECK(schmidt_poisson(0.0) == Approx(1.0));
    const double k5 = schmidt_poisson(1e5);
    CHECK(k5 > 1119.0);
    CHECK(k5 < 1123.0);
    CHECK(k5 == Approx(schmidt_asymptotic(1e5)).epsilon(1e-3));
    CHECK(schmidt_poisson(100.0) == Approx(schmidt_asymptotic(100.0)).epsilon(1e-3));
    CHECK(schmidt_asymptotic(1.0 / (4.0 * std::numbers::pi)) == Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS((void)schmidt_asymptotic(0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)schmidt_asymptotic(-1.0), std::invalid_argument);
}

TEST_CASE("operational measures") {
    CHECK(operational_r(1e5) == Approx(744.66).epsilon(1e-4));
    CHECK(operational_r(1e4) == Approx(235.48).epsilon(1e-4));
    CHECK(operational_r_eta(0.0) == Approx(1.0));
    CHECK(operational_r_eta(0.57) == Approx(1.525).epsilon(1e-3));
    CHECK_THROWS_AS((void)operational_r_eta(1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)operational_r_eta(-0.1), std::invalid_argument);
}

TEST_CASE("monotonicity in the argument") {
    double prev_k = 0.0, prev_r = 0.0, prev_s = 0.0;
    for (double v : {0.01, 0.1, 1.0, 10.0, 100.0, 1e4, 1e6}) {
        CHECK(schmidt_poisson(v) > prev_k);
        CHECK(operational_r(v) > prev_r);
        prev_k = schmidt_poisson(v);
        prev_r = operational_r(v);
    }
    for (double g : {0.0, 0.1, 0.5, 1.0, 2.0}) {
        CHECK(schmidt_single(g) >= prev_s);
        prev_s = schmidt_single(g);
    }
    double prev_eta = 0.0;
    for (double e : {0.0, 0.3, 0.6, 0.9, 0.99}) {
        CHECK(operational_r_eta(e) > prev_eta);
        prev_eta = operational_r_eta(e);
    }
}

TEST_CASE("single-pair and ensemble partitions answer different questions") {
    // The per-pair number and the polarization-partition number of the mode
    // ensemble never coincide away from vacuum.
    const double g = 0.33;
    const long long m = 1000;
    const double n = 2.0 * m * std::pow(std::sinh(g), 2);
    CHECK(schmidt_single(g) != Approx(schmidt_poisson(n)).epsilon(1e-6));
    CHECK(schmidt_poisson(n) < std::exp(std::min(700.0, schmidt_product_log(g, m))));
}

TEST_CASE("entanglement report wiring") {
    const EntanglementReport r = make_entanglement_report(0.33, 443000, 0.57);
    CHECK(r.mean_photons == Approx(2.0 * 443000 * std::pow(std::sinh(0.33), 2)).epsilon(1e-12));
    CHECK(r.k_single >= 1.0);
    CHECK(r.k_poisson >= 1.0);
    CHECK(r.r_eta == Approx(1.525).epsilon(1e-3));
    CHECK(std::isinf(r.k_product));

    const EntanglementReport vac = make_entanglement_report(0.0, 1, 0.0);
    CHECK(vac.k_single == Approx(1.0));
    CHECK(vac.k_poisson == Approx(1.0));
    CHECK(vac.ln_k_product == Approx(0.0));
    CHECK(vac.r_eta == Approx(1.0));
}
