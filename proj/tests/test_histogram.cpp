#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "bsv/histogram.hpp"
#include "bsv/rng.hpp"

using namespace bsv;
using doctest::Approx;

TEST_CASE("build and moments") {
    const std::vector<long long> x{1, 2, 2, 3, 3, 3, 4, 4, 5};
    const Histogram h = Histogram::build(x, 1.0);
    CHECK(h.total == 9.0);
    CHECK(h.mean == Approx(27.0 / 9.0));
    CHECK(h.counts.size() == 5);
    CHECK(h.counts[2] == 3.0);
}

TEST_CASE("delta distribution reports one bin width") {
    const std::vector<long long> x(500, 42);
    const Histogram h = Histogram::build(x, 1.0);
    CHECK(h.fwhm() == Approx(1.0));
    CHECK(Histogram::fd_bin_width(x) == Approx(1.0));
}

TEST_CASE("gaussian-like data: fwhm close to 2.355 sigma") {
    auto eng = pulse_stream(21, 0, 0);
    std::normal_distribution<double> normal(1000.0, 40.0);
    std::vector<long long> x(200000);
    for (auto& v : x) v = std::llround(normal(eng));
    const Histogram h = Histogram::build(x, Histogram::fd_bin_width(x));
    const double expected = 2.0 * std::sqrt(2.0 * std::log(2.0)) * 40.0;
    CHECK(h.fwhm() == Approx(expected).epsilon(0.03));
    CHECK(h.variance == Approx(1600.0).epsilon(0.03));
}

TEST_CASE("poisson fwhm matches the large-N closed form") {
    auto eng = pulse_stream(22, 0, 0);
    std::poisson_distribution<long long> poisson(1e4);
    std::vector<long long> x(100000);
    for (auto& v : x) v = poisson(eng);
    const Histogram h = Histogram::build(x, Histogram::fd_bin_width(x));
    CHECK(h.fwhm() == Approx(2.0 * std::sqrt(2.0 * 1e4 * std::log(2.0))).epsilon(0.03));
}

TEST_CASE("error paths") {
    CHECK_THROWS_AS((void)Histogram::build(std::vector<long long>{}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)Histogram::build(std::vector<long long>{1}, 0.0), std::invalid_argument);
}
