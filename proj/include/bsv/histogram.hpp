#pragma once

#include <span>
#include <vector>

namespace bsv {

// Uniform-bin count histogram. FWHM by linear interpolation between bin
// centers; a single occupied bin reports one bin width.
struct Histogram {
    double bin_lo = 0.0;    // left edge of bin 0
    double bin_width = 1.0; // integer counts per bin
    std::vector<double> counts;
    double total = 0.0;
    double mean = 0.0;
    double variance = 0.0; // of the raw samples, not the binned curve
    bool low_statistics = false;

    double bin_center(size_t i) const { return bin_lo + (static_cast<double>(i) + 0.5) * bin_width; }
    double fwhm() const;

    static Histogram build(std::span<const long long> samples, double bin_width);

    // Freedman-Diaconis width rounded to an integer number of counts,
    // never below one count.
    static double fd_bin_width(std::span<const long long> samples);
};

} // namespace bsv
