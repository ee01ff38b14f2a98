#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "bsv/fock_state.hpp"
#include "bsv/gaussian_state.hpp"
#include "bsv/stokes.hpp"

namespace bsv::testutil {

// Haar-ish random SU(2) (det = 1), enough for invariance checks.
inline CMat random_su2(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 2.0 * std::numbers::pi);
    const double chi = 0.5 * uni(rng);
    const cd a = std::polar(std::cos(chi), uni(rng));
    const cd b = std::polar(std::sin(chi), uni(rng));
    CMat u(2, 2);
    u(0, 0) = a;
    u(0, 1) = -std::conj(b);
    u(1, 0) = b;
    u(1, 1) = std::conj(a);
    return u;
}

// General U(2): SU(2) times a random overall phase.
inline CMat random_u2(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 2.0 * std::numbers::pi);
    CMat u = random_su2(rng);
    const cd phase = std::polar(1.0, uni(rng));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) u(i, j) *= phase;
    return u;
}

inline double max_moment_diff(const StokesMoments& a, const StokesMoments& b) {
    return std::max({std::abs(a.mean_s0 - b.mean_s0), std::abs(a.mean_s1 - b.mean_s1),
                     std::abs(a.mean_s2 - b.mean_s2), std::abs(a.mean_s3 - b.mean_s3),
                     std::abs(a.var_s1 - b.var_s1), std::abs(a.var_s2 - b.var_s2),
                     std::abs(a.var_s3 - b.var_s3)});
}

// Largest elementwise deviation after aligning the global phase on the
// biggest amplitude of `a`.
inline double table_diff_up_to_phase(const FockState& a, const FockState& b) {
    auto ta = a.table();
    auto tb = b.table();
    size_t peak = 0;
    for (size_t i = 0; i < ta.size(); ++i)
        if (std::abs(ta[i]) > std::abs(ta[peak])) peak = i;
    if (std::abs(tb[peak]) == 0.0) return 1.0;
    const cd phase = ta[peak] / tb[peak];
    double worst = 0.0;
    for (size_t i = 0; i < ta.size(); ++i) worst = std::max(worst, std::abs(ta[i] - phase * tb[i]));
    return worst;
}

} // namespace bsv::testutil
