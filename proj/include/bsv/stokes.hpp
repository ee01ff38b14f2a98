#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "bsv/gaussian_state.hpp"
#include "bsv/linalg.hpp"

namespace bsv {

// Stokes convention, fixed once and used identically by the analytic
// engine, the Fock oracle, and the Monte Carlo:
//   S0 = n_H + n_V          per beam, summed over beams
//   S1 = n_H - n_V          linear-basis difference
//   S2 = a_H^dag a_V + a_V^dag a_H        diagonal-basis difference
//   S3 = -i (a_H^dag a_V - a_V^dag a_H)   circular-basis difference
struct StokesMoments {
    double mean_s0 = 0.0;
    double mean_s1 = 0.0;
    double mean_s2 = 0.0;
    double mean_s3 = 0.0;
    double var_s1 = 0.0;
    double var_s2 = 0.0;
    double var_s3 = 0.0;

    // Standard errors; NaN for analytic input.
    double se_mean_s0 = std::numeric_limits<double>::quiet_NaN();
    double se_var_s1 = std::numeric_limits<double>::quiet_NaN();
    double se_var_s2 = std::numeric_limits<double>::quiet_NaN();
    double se_var_s3 = std::numeric_limits<double>::quiet_NaN();
    // Normal-theory cross-check of the jackknife errors above.
    double se_var_s1_normal = std::numeric_limits<double>::quiet_NaN();
    double se_var_s2_normal = std::numeric_limits<double>::quiet_NaN();
    double se_var_s3_normal = std::numeric_limits<double>::quiet_NaN();

    bool has_stderr() const { return std::isfinite(se_var_s1); }
    double var(int i) const;
    double se_var(int i) const;
};

struct WitnessResult {
    double lhs = 0.0;
    double threshold = 2.0;
    bool violated = false;
    double stderr_lhs = std::numeric_limits<double>::quiet_NaN();
    // Standard deviations below the threshold; +inf when the estimate is
    // exact, NaN when no standard error is available.
    double sigma_below = std::numeric_limits<double>::quiet_NaN();
};

// Coefficient matrix C_i with S_i = sum_jk C[j][k] a_j^dag a_k over all
// modes of an n_pair state (i in 0..3).
CMat stokes_coefficient_matrix(int i, int n_pairs);

// Means from the N matrix, variances from the Wick fourth moments.
StokesMoments stokes_moments_gaussian(const GaussianState& state);

// Sum of the three Stokes variances over the detected total photon number.
// Values below 2 certify non-separability.
WitnessResult witness(const StokesMoments& moments);

// Noise reduction factor Var(S_i)/<S0> for i in 1..3.
double nrf(const StokesMoments& moments, int i);

// Moments of a set of statistically independent mode pairs: means and
// variances add componentwise; standard errors combine in quadrature.
StokesMoments aggregate_modes(std::span<const StokesMoments> per_pair);

// Classical mixture of per-component moments (means average; variances pick
// up the spread of the component means).
StokesMoments mix_moments(std::span<const StokesMoments> components, std::span<const double> weights);

} // namespace bsv
