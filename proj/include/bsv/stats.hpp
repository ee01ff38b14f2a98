#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bsv {

// Mean, unbiased variance and standard errors estimated from one sample.
struct SampleStats {
    std::size_t n = 0;
    double mean = 0.0;
    double variance = 0.0;        // unbiased (n-1)
    double se_mean = 0.0;
    double se_variance = 0.0;     // delete-1 jackknife
    double se_variance_normal = 0.0; // normal-theory sqrt(2 s^4/(n-1)) cross-check
};

SampleStats sample_stats(std::span<const double> x);

// Ordinary least squares y = intercept + slope * x.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
    double se_slope = 0.0;
    double se_intercept = 0.0;
};

LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

// Regularized upper incomplete gamma Q(a, x).
double gamma_q(double a, double x);

// Pearson goodness-of-fit p-value of integer samples against a Poisson law
// with the sample mean. Tail bins are pooled until every expected count is
// at least 5; dof = bins - 2 (mean estimated from the data).
double poisson_chi_square_pvalue(std::span<const long long> samples);

} // namespace bsv
