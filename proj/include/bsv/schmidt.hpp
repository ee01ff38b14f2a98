#pragma once

#include "bsv/bessel.hpp"

namespace bsv {

// Closed-form entanglement measures. N0 = sinh^2(gamma) is the mean photon
// number per mode; N = 2 M N0 the mean photon number of the whole pulse.
struct EntanglementReport {
    double gamma = 0.0;
    long long m_pairs = 1;
    double eta = 0.0;
    double mean_photons = 0.0; // N = 2 M sinh^2(gamma)
    double k_single = 1.0;     // per correlated mode pair
    double ln_k_product = 0.0; // all 2M pairings addressed separately
    double k_product = 0.0;    // +inf when not representable
    double k_poisson = 1.0;    // polarization partition of the mode ensemble
    double k_asymptotic = 0.0; // 2 sqrt(pi N)
    double r_ideal = 0.0;      // 2 sqrt(2 N ln 2)
    double r_eta = 1.0;        // 1 / sqrt(1 - eta)
};

// K = 1 + 2 sinh^2(gamma) for one two-mode squeezed pair.
double schmidt_single(double gamma);

// ln K for K = (1 + 2 N0)^{2M}; the linear value overflows for realistic M.
double schmidt_product_log(double gamma, long long m_pairs);

// K = e^{2N} / I0(2N), evaluated as 1 / i0_scaled(2N); overflow-free.
double schmidt_poisson(double mean_photons);

// Large-N limit 2 sqrt(pi N).
double schmidt_asymptotic(double mean_photons);

// Width ratio of unconditional to conditional photon-number distribution,
// large-N asymptotic of the lossless case (Poisson FWHM over one count).
double operational_r(double mean_photons);

// Loss-limited width ratio 1 / sqrt(1 - eta).
double operational_r_eta(double eta);

EntanglementReport make_entanglement_report(double gamma, long long m_pairs, double eta);

} // namespace bsv
