#include "bsv/schmidt.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace bsv {

namespace {

void require_gain(double gamma) {
    if (!std::isfinite(gamma) || gamma < 0.0)
        throw std::invalid_argument("parametric gain must be finite and >= 0");
}

} // namespace

double schmidt_single(double gamma) {
    require_gain(gamma);
    const double sh = std::sinh(gamma);
    return 1.0 + 2.0 * sh * sh;
}

double schmidt_product_log(double gamma, long long m_pairs) {
    require_gain(gamma);
    if (m_pairs < 1) throw std::invalid_argument("schmidt_product_log: m_pairs must be >= 1");
    return 2.0 * static_cast<double>(m_pairs) * std::log(schmidt_single(gamma));
}

double schmidt_poisson(double mean_photons) {
    if (!(mean_photons >= 0.0)) throw std::invalid_argument("schmidt_poisson: mean photons must be >= 0");
    return 1.0 / bessel_i0_scaled(2.0 * mean_photons);
}

double schmidt_asymptotic(double mean_photons) {
    if (!(mean_photons > 0.0)) throw std::invalid_argument("schmidt_asymptotic: mean photons must be > 0");
    return 2.0 * std::sqrt(std::numbers::pi * mean_photons);
}

double operational_r(double mean_photons) {
    if (!(mean_photons > 0.0)) throw std::invalid_argument("operational_r: mean photons must be > 0");
    return 2.0 * std::sqrt(2.0 * mean_photons * std::numbers::ln2);
}

double operational_r_eta(double eta) {
    if (!(eta >= 0.0 && eta < 1.0))
        throw std::invalid_argument("operational_r_eta: eta must lie in [0, 1)");
    return 1.0 / std::sqrt(1.0 - eta);
}

EntanglementReport make_entanglement_report(double gamma, long long m_pairs, double eta) {
    EntanglementReport r;
    r.gamma = gamma;
    r.m_pairs = m_pairs;
    r.eta = eta;
    const double n0 = std::sinh(gamma) * std::sinh(gamma);
    r.mean_photons = 2.0 * static_cast<double>(m_pairs) * n0;
    r.k_single = schmidt_single(gamma);
    r.ln_k_product = schmidt_product_log(gamma, m_pairs);
    r.k_product = r.ln_k_product < 700.0 ? std::exp(r.ln_k_product)
                                         : std::numeric_limits<double>::infinity();
    r.k_poisson = schmidt_poisson(r.mean_photons);
    r.k_asymptotic = r.mean_photons > 0.0 ? schmidt_asymptotic(r.mean_photons) : 0.0;
    r.r_ideal = r.mean_photons > 0.0 ? operational_r(r.mean_photons) : 0.0;
    r.r_eta = operational_r_eta(eta);
    return r;
}

} // namespace bsv
