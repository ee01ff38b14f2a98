#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "bsv/gaussian_state.hpp"
#include "bsv/modes.hpp"
#include "bsv/stokes.hpp"

namespace bsv {

struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Truncated four-mode Fock amplitude table, indexed (n_AH, n_AV, n_BH, n_BV)
// with each index in [0, n_max]. Constructors populate only components with
// per-beam totals <= n_max, which beam-local transforms preserve, so every
// operation below is exact on the stored subspace.
//
// Brute-force oracle: intended for small gain, where the recorded analytic
// truncation tail is negligible. Not a performance path.
class FockState {
public:
    explicit FockState(int n_max);

    int n_max() const { return n_max_; }
    double tail_bound() const { return tail_bound_; }

    cd amplitude(int n_ah, int n_av, int n_bh, int n_bv) const { return table_[index(n_ah, n_av, n_bh, n_bv)]; }
    cd& at(int n_ah, int n_av, int n_bh, int n_bv) { return table_[index(n_ah, n_av, n_bh, n_bv)]; }

    double norm_squared() const;

    std::span<const cd> table() const { return table_; }

private:
    friend FockState build_singlet(double, int, double);
    friend FockState build_phi_state(double, double, int, double);
    friend FockState apply_rotation_fock(const FockState&, const PolarizationRotation&);
    friend FockState apply_mode_phases_fock(const FockState&, std::span<const double>);

    size_t index(int a, int b, int c, int d) const {
        const size_t l = static_cast<size_t>(n_max_) + 1;
        return ((static_cast<size_t>(a) * l + b) * l + c) * l + d;
    }

    int n_max_;
    double tail_bound_ = 0.0;
    std::vector<cd> table_;
};

// Norm left outside the truncated table: sum_{N > n_max} (N+1) x^N with
// x = tanh^2(gamma), in closed form.
double truncation_tail(double gamma, int n_max);

// Smallest n_max whose analytic tail is below `bound`.
int min_nmax_for_tail(double gamma, double bound);

// amplitude(n, m, m, n) = (-1)^m tanh^{n+m} / cosh^2, zero elsewhere.
// Throws TruncationError if the analytic tail exceeds `max_tail`.
FockState build_singlet(double gamma, int n_max, double max_tail = 1e-12);

// amplitude(n, m, n, m) = e^{i m phi} tanh^{n+m} / cosh^2 (pairings
// (AH,BH) and (AV,BV)).
FockState build_phi_state(double gamma, double phi, int n_max, double max_tail = 1e-12);

// Exact moments by operator application on the amplitude table, normalized
// by the captured norm.
StokesMoments stokes_moments_exact(const FockState& state);

// Same transform convention as the Gaussian engine (see gaussian_state.hpp).
FockState apply_rotation_fock(const FockState& state, const PolarizationRotation& rot);

FockState apply_mode_phases_fock(const FockState& state, std::span<const double> phases);

// Exact Cov(n_i, n_j) over the table, i and j in the canonical mode order.
double fock_photon_covariance(const FockState& state, int i, int j);

// Per-beam mean of S0^A(S0^A + 2) and of S1^A..S3^A squared, for the
// single-mode operator identity checks (beam 0 = A, 1 = B).
double fock_beam_stokes_square_sum(const FockState& state, int beam);
double fock_beam_s0_s0p2(const FockState& state, int beam);

// Geometric Schmidt coefficients lambda_n = tanh^{2n} / cosh^2, n <= n_max.
std::vector<double> schmidt_spectrum(double gamma, int n_max);

// (sum lambda)^2 / sum lambda^2 of a (possibly truncated) spectrum.
double schmidt_number_of_spectrum(std::span<const double> lambda);

} // namespace bsv
