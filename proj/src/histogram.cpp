#include "bsv/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bsv {

Histogram Histogram::build(std::span<const long long> samples, double bin_width) {
    if (samples.empty()) throw std::invalid_argument("Histogram: no samples");
    if (!(bin_width > 0.0)) throw std::invalid_argument("Histogram: bin width must be > 0");
    const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());

    Histogram h;
    h.bin_width = bin_width;
    h.bin_lo = static_cast<double>(*mn) - 0.5; // integer samples sit at bin centers for width 1
    const size_t nbins = static_cast<size_t>(std::floor((static_cast<double>(*mx) - h.bin_lo) / bin_width)) + 1;
    h.counts.assign(nbins, 0.0);
    double sum = 0.0;
    for (long long v : samples) {
        const size_t i = static_cast<size_t>((static_cast<double>(v) - h.bin_lo) / bin_width);
        h.counts[std::min(i, nbins - 1)] += 1.0;
        sum += static_cast<double>(v);
    }
    h.total = static_cast<double>(samples.size());
    h.mean = sum / h.total;
    double ss = 0.0;
    for (long long v : samples) {
        const double d = static_cast<double>(v) - h.mean;
        ss += d * d;
    }
    h.variance = samples.size() > 1 ? ss / (static_cast<double>(samples.size()) - 1.0) : 0.0;
    return h;
}

double Histogram::fd_bin_width(std::span<const long long> samples) {
    if (samples.empty()) throw std::invalid_argument("fd_bin_width: no samples");
    std::vector<long long> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const auto quantile = [&](double q) {
        const double pos = q * (static_cast<double>(sorted.size()) - 1.0);
        const size_t i = static_cast<size_t>(pos);
        const double frac = pos - static_cast<double>(i);
        if (i + 1 >= sorted.size()) return static_cast<double>(sorted.back());
        return (1.0 - frac) * static_cast<double>(sorted[i]) + frac * static_cast<double>(sorted[i + 1]);
    };
    const double iqr = quantile(0.75) - quantile(0.25);
    const double w = 2.0 * iqr / std::cbrt(static_cast<double>(sorted.size()));
    return std::max(1.0, std::round(w));
}

double Histogram::fwhm() const {
    if (counts.empty()) throw std::invalid_argument("fwhm: empty histogram");
    size_t peak = 0;
    for (size_t i = 1; i < counts.size(); ++i)
        if (counts[i] > counts[peak]) peak = i;
    const double half = 0.5 * counts[peak];
    if (!(half > 0.0)) throw std::invalid_argument("fwhm: flat histogram");

    // Left crossing: last rise through half on the way up to the peak.
    double left = bin_center(peak) - 0.5 * bin_width;
    bool found_left = false;
    for (size_t i = peak; i-- > 0;) {
        if (counts[i] <= half) {
            const double x0 = bin_center(i), x1 = bin_center(i + 1);
            const double y0 = counts[i], y1 = counts[i + 1];
            left = x0 + (half - y0) / (y1 - y0) * (x1 - x0);
            found_left = true;
            break;
        }
    }
    double right = bin_center(peak) + 0.5 * bin_width;
    bool found_right = false;
    for (size_t i = peak + 1; i < counts.size(); ++i) {
        if (counts[i] <= half) {
            const double x0 = bin_center(i - 1), x1 = bin_center(i);
            const double y0 = counts[i - 1], y1 = counts[i];
            right = x0 + (half - y0) / (y1 - y0) * (x1 - x0);
            found_right = true;
            break;
        }
    }
    // A spike narrower than the binning: report the bin resolution.
    if (!found_left && !found_right) return bin_width;
    return right - left;
}

} // namespace bsv
