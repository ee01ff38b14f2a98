#include "bsv/stokes.hpp"

#include <limits>
#include <stdexcept>

namespace bsv {

double StokesMoments::var(int i) const {
    switch (i) {
        case 1: return var_s1;
        case 2: return var_s2;
        case 3: return var_s3;
    }
    throw std::invalid_argument("StokesMoments::var: index must be 1..3");
}

double StokesMoments::se_var(int i) const {
    switch (i) {
        case 1: return se_var_s1;
        case 2: return se_var_s2;
        case 3: return se_var_s3;
    }
    throw std::invalid_argument("StokesMoments::se_var: index must be 1..3");
}

CMat stokes_coefficient_matrix(int i, int n_pairs) {
    if (i < 0 || i > 3) throw std::invalid_argument("stokes_coefficient_matrix: index must be 0..3");
    const int n = kModesPerPair * n_pairs;
    CMat c(n, n);
    const cd im(0.0, 1.0);
    for (int p = 0; p < n_pairs; ++p) {
        for (int b = 0; b < 2; ++b) {
            const int h = kModesPerPair * p + 2 * b;
            const int v = h + 1;
            switch (i) {
                case 0:
                    c(h, h) = 1.0;
                    c(v, v) = 1.0;
                    break;
                case 1:
                    c(h, h) = 1.0;
                    c(v, v) = -1.0;
                    break;
                case 2:
                    c(h, v) = 1.0;
                    c(v, h) = 1.0;
                    break;
                case 3:
                    c(h, v) = -im;
                    c(v, h) = im;
                    break;
            }
        }
    }
    return c;
}

namespace {

double quadratic_mean(const CMat& c, const CMat& number) {
    cd m = 0.0;
    const int n = c.rows();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m += c(i, j) * number(i, j);
    return m.real();
}

// Var(S) for S = sum c_ij a_i^dag a_j on a zero-mean Gaussian state:
//   sum_ijkl c_ij c_kl [ conj(M_ik) M_jl + N_il (delta_jk + conj(N_jk)) ]
double quadratic_variance(const CMat& c, const CMat& number, const CMat& anomalous) {
    const int n = c.rows();
    cd var = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const cd cij = c(i, j);
            if (cij == cd{}) continue;
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    const cd ckl = c(k, l);
                    if (ckl == cd{}) continue;
                    cd term = std::conj(anomalous(i, k)) * anomalous(j, l);
                    term += number(i, l) * std::conj(number(j, k));
                    if (j == k) term += number(i, l);
                    var += cij * ckl * term;
                }
        }
    return var.real();
}

} // namespace

StokesMoments stokes_moments_gaussian(const GaussianState& state) {
    const int n_pairs = state.n_pairs();
    const CMat& nm = state.number_matrix();
    const CMat& am = state.anomalous_matrix();

    StokesMoments m;
    m.mean_s0 = quadratic_mean(stokes_coefficient_matrix(0, n_pairs), nm);
    m.mean_s1 = quadratic_mean(stokes_coefficient_matrix(1, n_pairs), nm);
    m.mean_s2 = quadratic_mean(stokes_coefficient_matrix(2, n_pairs), nm);
    m.mean_s3 = quadratic_mean(stokes_coefficient_matrix(3, n_pairs), nm);
    m.var_s1 = quadratic_variance(stokes_coefficient_matrix(1, n_pairs), nm, am);
    m.var_s2 = quadratic_variance(stokes_coefficient_matrix(2, n_pairs), nm, am);
    m.var_s3 = quadratic_variance(stokes_coefficient_matrix(3, n_pairs), nm, am);
    return m;
}

WitnessResult witness(const StokesMoments& moments) {
    if (!(moments.mean_s0 > 0.0))
        throw std::domain_error("witness: undefined for <S0> = 0");
    WitnessResult r;
    r.lhs = (moments.var_s1 + moments.var_s2 + moments.var_s3) / moments.mean_s0;
    r.violated = r.lhs < r.threshold;
    if (moments.has_stderr()) {
        const double sv = moments.se_var_s1 * moments.se_var_s1 +
                          moments.se_var_s2 * moments.se_var_s2 +
                          moments.se_var_s3 * moments.se_var_s3;
        const double rel_s0 = moments.se_mean_s0 / moments.mean_s0;
        r.stderr_lhs = std::sqrt(sv / (moments.mean_s0 * moments.mean_s0) + r.lhs * r.lhs * rel_s0 * rel_s0);
        r.sigma_below = r.stderr_lhs > 0.0 ? (r.threshold - r.lhs) / r.stderr_lhs
                                           : std::numeric_limits<double>::infinity();
    }
    return r;
}

double nrf(const StokesMoments& moments, int i) {
    if (!(moments.mean_s0 > 0.0)) throw std::domain_error("nrf: undefined for <S0> = 0");
    return moments.var(i) / moments.mean_s0;
}

StokesMoments aggregate_modes(std::span<const StokesMoments> per_pair) {
    if (per_pair.empty()) throw std::invalid_argument("aggregate_modes: empty input");
    StokesMoments out;
    double se0 = 0.0, se1 = 0.0, se2 = 0.0, se3 = 0.0;
    bool all_sampled = true;
    for (const auto& m : per_pair) {
        out.mean_s0 += m.mean_s0;
        out.mean_s1 += m.mean_s1;
        out.mean_s2 += m.mean_s2;
        out.mean_s3 += m.mean_s3;
        out.var_s1 += m.var_s1;
        out.var_s2 += m.var_s2;
        out.var_s3 += m.var_s3;
        if (m.has_stderr()) {
            se0 += m.se_mean_s0 * m.se_mean_s0;
            se1 += m.se_var_s1 * m.se_var_s1;
            se2 += m.se_var_s2 * m.se_var_s2;
            se3 += m.se_var_s3 * m.se_var_s3;
        } else {
            all_sampled = false;
        }
    }
    if (all_sampled) {
        out.se_mean_s0 = std::sqrt(se0);
        out.se_var_s1 = std::sqrt(se1);
        out.se_var_s2 = std::sqrt(se2);
        out.se_var_s3 = std::sqrt(se3);
    }
    return out;
}

StokesMoments mix_moments(std::span<const StokesMoments> components, std::span<const double> weights) {
    if (components.empty() || components.size() != weights.size())
        throw std::invalid_argument("mix_moments: need one weight per component");
    double wsum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw std::invalid_argument("mix_moments: negative weight");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > 1e-9) throw std::invalid_argument("mix_moments: weights must sum to 1");

    StokesMoments out;
    for (size_t j = 0; j < components.size(); ++j) {
        const auto& m = components[j];
        const double w = weights[j];
        out.mean_s0 += w * m.mean_s0;
        out.mean_s1 += w * m.mean_s1;
        out.mean_s2 += w * m.mean_s2;
        out.mean_s3 += w * m.mean_s3;
    }
    // <S^2>_mix = sum_j w_j (var_j + mean_j^2), then subtract mean_mix^2.
    for (size_t j = 0; j < components.size(); ++j) {
        const auto& m = components[j];
        const double w = weights[j];
        out.var_s1 += w * (m.var_s1 + m.mean_s1 * m.mean_s1);
        out.var_s2 += w * (m.var_s2 + m.mean_s2 * m.mean_s2);
        out.var_s3 += w * (m.var_s3 + m.mean_s3 * m.mean_s3);
    }
    out.var_s1 -= out.mean_s1 * out.mean_s1;
    out.var_s2 -= out.mean_s2 * out.mean_s2;
    out.var_s3 -= out.mean_s3 * out.mean_s3;
    return out;
}

} // namespace bsv
