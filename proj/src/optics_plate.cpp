#include "bsv/optics_plate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bsv/gaussian_state.hpp"
#include "bsv/stokes.hpp"

namespace bsv {

namespace {

constexpr double kSpeedOfLight = 299792458.0;   // m/s
constexpr double kPumpCoherenceTime = 5e-12;    // s

// Ghosh, Opt. Commun. 163 (1999): alpha-quartz,
// n^2 = A + B1 l^2/(l^2 - C1) + B2 l^2/(l^2 - C2), l in um.
struct SellmeierSet {
    double a, b1, c1, b2, c2;
};
constexpr SellmeierSet kQuartzOrdinary{1.28604141, 1.07044083, 1.00585997e-2, 1.10202242, 100.0};
constexpr SellmeierSet kQuartzExtraordinary{1.28851804, 1.09509924, 1.02101864e-2, 1.15662475, 100.0};

double sellmeier(const SellmeierSet& s, double lambda_um) {
    const double l2 = lambda_um * lambda_um;
    const double n2 = s.a + s.b1 * l2 / (l2 - s.c1) + s.b2 * l2 / (l2 - s.c2);
    return std::sqrt(n2);
}

void require_wavelength(double lambda_m) {
    if (!(lambda_m >= 0.4e-6 && lambda_m <= 1.1e-6))
        throw std::invalid_argument("refractive_index: wavelength outside 0.4-1.1 um");
}

void require_spec(const PlateSpec& spec) {
    if (!(spec.thickness > 0.0)) throw std::invalid_argument("plate: thickness must be > 0");
    require_wavelength(spec.lambda_a);
    require_wavelength(spec.lambda_b);
}

} // namespace

double refractive_index(double lambda_m, Ray ray) {
    require_wavelength(lambda_m);
    const double um = lambda_m * 1e6;
    return sellmeier(ray == Ray::Ordinary ? kQuartzOrdinary : kQuartzExtraordinary, um);
}

double oe_delay(const PlateSpec& spec, double lambda_m) {
    require_spec(spec);
    const double no = refractive_index(lambda_m, Ray::Ordinary);
    const double ne = refractive_index(lambda_m, Ray::Extraordinary);
    return 2.0 * std::numbers::pi * spec.thickness / lambda_m * std::abs(no - ne);
}

std::array<double, 4> plate_mode_phases(const PlateSpec& spec) {
    require_spec(spec);
    const double two_pi_d = 2.0 * std::numbers::pi * spec.thickness;
    return {
        two_pi_d / spec.lambda_a * refractive_index(spec.lambda_a, Ray::Ordinary),
        two_pi_d / spec.lambda_a * refractive_index(spec.lambda_a, Ray::Extraordinary),
        two_pi_d / spec.lambda_b * refractive_index(spec.lambda_b, Ray::Ordinary),
        two_pi_d / spec.lambda_b * refractive_index(spec.lambda_b, Ray::Extraordinary),
    };
}

double conversion_residual(const PlateSpec& spec) {
    const double diff = oe_delay(spec, spec.lambda_a) - oe_delay(spec, spec.lambda_b);
    const double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(std::abs(diff) - std::numbers::pi, two_pi);
    if (r < -std::numbers::pi) r += two_pi;
    if (r >= std::numbers::pi) r -= two_pi;
    return r;
}

double converted_witness_bound(double gamma, double residual) {
    if (!std::isfinite(gamma) || gamma < 0.0)
        throw std::invalid_argument("converted_witness_bound: bad gamma");
    const double ch = std::cosh(gamma);
    return 2.0 * ch * ch * (1.0 - std::cos(residual));
}

std::vector<PhaseScanRow> mz_phase_scan(double gamma, std::span<const double> phi_grid,
                                        double path_offset_m) {
    if (phi_grid.empty()) throw std::invalid_argument("mz_phase_scan: empty grid");
    const double arg = path_offset_m / (kSpeedOfLight * kPumpCoherenceTime);
    const double visibility = std::exp(-arg * arg);

    // Dephasing between the arms mixes |Psi(phi)> with |Psi(phi + pi)>;
    // the Stokes means all vanish, so the mixture variance is the weighted
    // average of the two branches.
    auto nrf_s2_at = [&](double phi) {
        const std::array<double, 2> w{0.5 * (1.0 + visibility), 0.5 * (1.0 - visibility)};
        const std::array<StokesMoments, 2> branches{
            stokes_moments_gaussian(make_phi_state(gamma, phi)),
            stokes_moments_gaussian(make_phi_state(gamma, phi + std::numbers::pi)),
        };
        const StokesMoments mixed = mix_moments(branches, w);
        return nrf(mixed, 2);
    };

    const double nrf_min = nrf_s2_at(std::numbers::pi);
    const double nrf_max = nrf_s2_at(0.0);
    std::vector<PhaseScanRow> rows;
    rows.reserve(phi_grid.size());
    for (double phi : phi_grid) rows.push_back({phi, nrf_s2_at(phi), nrf_min, nrf_max});
    return rows;
}

} // namespace bsv
