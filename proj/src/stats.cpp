#include "bsv/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace bsv {

SampleStats sample_stats(std::span<const double> x) {
    SampleStats s;
    s.n = x.size();
    if (s.n == 0) return s;
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(s.n);
    s.mean = mean;
    if (s.n < 2) return s;

    // Centered accumulation keeps the 4th-moment sums well conditioned.
    const double n = static_cast<double>(s.n);
    double s2 = 0.0, s4 = 0.0;
    for (double v : x) {
        const double d = v - mean;
        const double d2 = d * d;
        s2 += d2;
        s4 += d2 * d2;
    }
    s.variance = s2 / (n - 1.0);
    s.se_mean = std::sqrt(s.variance / n);
    s.se_variance_normal = s.variance * std::sqrt(2.0 / (n - 1.0));

    // Delete-1 jackknife of the unbiased variance, in closed form.
    // With centered data y_i (sum y = 0):
    //   v_(i) = (s2 - y_i^2 - y_i^2/(n-1)) / (n-2)
    if (s.n > 2) {
        double sum_v = 0.0, sum_v2 = 0.0;
        const double scale = 1.0 / (n - 2.0);
        for (double v : x) {
            const double d = v - mean;
            const double vi = (s2 - d * d * (1.0 + 1.0 / (n - 1.0))) * scale;
            sum_v += vi;
            sum_v2 += vi * vi;
        }
        const double vbar = sum_v / n;
        double ss = sum_v2 / n - vbar * vbar;
        if (ss < 0.0) ss = 0.0;
        s.se_variance = std::sqrt((n - 1.0) * ss);
    }
    return s;
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("linear_fit: need >= 2 points of equal length");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx <= 0.0) throw std::invalid_argument("linear_fit: degenerate abscissae");
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        ssr += r * r;
    }
    f.residual_rms = std::sqrt(ssr / n);
    if (x.size() > 2) {
        const double sigma2 = ssr / (n - 2.0);
        f.se_slope = std::sqrt(sigma2 / sxx);
        f.se_intercept = std::sqrt(sigma2 * (1.0 / n + mx * mx / sxx));
    }
    return f;
}

namespace {

// Lower incomplete gamma P(a,x) by series, upper Q(a,x) by Lentz continued
// fraction; the usual split at x = a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace

double gamma_q(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double poisson_chi_square_pvalue(std::span<const long long> samples) {
    if (samples.size() < 50) throw std::invalid_argument("poisson_chi_square_pvalue: too few samples");
    double mean = 0.0;
    for (long long v : samples) mean += static_cast<double>(v);
    mean /= static_cast<double>(samples.size());
    if (mean <= 0.0) throw std::invalid_argument("poisson_chi_square_pvalue: zero mean");

    std::map<long long, double> observed;
    for (long long v : samples) observed[v] += 1.0;

    // Expected Poisson counts over the occupied range, with the two open
    // tails folded into the end cells.
    const long long lo = observed.begin()->first;
    const long long hi = observed.rbegin()->first;
    const double n = static_cast<double>(samples.size());
    std::vector<double> obs, exp;
    double log_mean = std::log(mean);
    for (long long k = lo; k <= hi; ++k) {
        double e;
        if (k == lo) {
            e = n * gamma_q(static_cast<double>(lo) + 1.0, mean); // P(X <= lo)
        } else if (k == hi) {
            e = n * (1.0 - gamma_q(static_cast<double>(hi), mean)); // P(X >= hi)
        } else {
            const double logp = -mean + k * log_mean - std::lgamma(static_cast<double>(k) + 1.0);
            e = n * std::exp(logp);
        }
        auto it = observed.find(k);
        obs.push_back(it == observed.end() ? 0.0 : it->second);
        exp.push_back(e);
    }

    // Pool adjacent cells until every expected count reaches 5.
    std::vector<double> po, pe;
    double ao = 0.0, ae = 0.0;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        ao += obs[i];
        ae += exp[i];
        if (ae >= 5.0) {
            po.push_back(ao);
            pe.push_back(ae);
            ao = ae = 0.0;
        }
    }
    if (ae > 0.0) {
        if (pe.empty()) {
            po.push_back(ao);
            pe.push_back(ae);
        } else {
            po.back() += ao;
            pe.back() += ae;
        }
    }
    if (po.size() < 3) throw std::invalid_argument("poisson_chi_square_pvalue: too few cells after pooling");

    double chi2 = 0.0;
    for (std::size_t i = 0; i < po.size(); ++i) {
        const double d = po[i] - pe[i];
        chi2 += d * d / pe[i];
    }
    const double dof = static_cast<double>(po.size()) - 2.0;
    return gamma_q(0.5 * dof, 0.5 * chi2);
}

} // namespace bsv
