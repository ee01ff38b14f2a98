#pragma once

#include <span>
#include <vector>

#include "bsv/linalg.hpp"
#include "bsv/modes.hpp"

namespace bsv {

// Zero-mean Gaussian state of 4*n_pairs bosonic modes, stored as the
// photon-number matrix N[i][j] = <a_i^dag a_j> and the anomalous matrix
// M[i][j] = <a_i a_j>. The displacement is identically zero: all states
// here are squeezed vacua.
//
// Transform convention: a unitary V acting on the annihilation operators,
// a_i -> sum_j V_ij a_j, maps the moments to
//   N -> conj(V) N V^T,   M -> V M V^T.
// For every state constructed by this module N is proportional to the
// identity, where conj(V) N V^T and V N V^dag coincide.
class GaussianState {
public:
    explicit GaussianState(int n_pairs = 1)
        : n_pairs_(n_pairs),
          number_(kModesPerPair * n_pairs, kModesPerPair * n_pairs),
          anomalous_(kModesPerPair * n_pairs, kModesPerPair * n_pairs) {
        if (n_pairs < 1) throw std::invalid_argument("GaussianState: n_pairs must be >= 1");
    }

    static GaussianState from_matrices(const CMat& number, const CMat& anomalous);

    int n_pairs() const { return n_pairs_; }
    int n_modes() const { return kModesPerPair * n_pairs_; }

    const CMat& number_matrix() const { return number_; }
    const CMat& anomalous_matrix() const { return anomalous_; }

    double mean_photons(int i) const { return number_(i, i).real(); }
    double total_mean_photons() const { return number_.trace().real(); }

    // N Hermitian with non-negative diagonal, M symmetric.
    void check_structure(double tol = 1e-12) const;

private:
    friend GaussianState make_singlet(double);
    friend GaussianState make_phi_state(double, double);
    friend GaussianState apply_rotation(const GaussianState&, const struct PolarizationRotation&);
    friend GaussianState apply_loss(const GaussianState&, const struct LossMap&);
    friend GaussianState apply_mode_phases(const GaussianState&, std::span<const double>);

    int n_pairs_;
    CMat number_;
    CMat anomalous_;
};

// Four-mode state generated by pairwise two-mode squeezing of (AH,BV) and
// (AV,BH) with opposite signs: N = sinh^2(gamma) * I,
// M[AH][BV] = +cosh*sinh, M[AV][BH] = -cosh*sinh.
GaussianState make_singlet(double gamma);

// Interferometer output with pairings (AH,BH) and (AV,BV):
// M[AH][BH] = cosh*sinh, M[AV][BV] = e^{i phi} cosh*sinh.
// phi = pi is the minus-signed pairing state, phi = 0 the plus-signed one.
GaussianState make_phi_state(double gamma, double phi);

enum class TripletKind { PsiPlus, PhiMinus, PhiPlus };

GaussianState make_triplet(TripletKind kind, double gamma);

// 2x2 unitary acting on the (H, V) annihilation operators of one or both
// beams, applied to every pair.
struct PolarizationRotation {
    enum class Target { BeamA, BeamB, Both };

    CMat u; // 2x2
    Target target = Target::Both;

    static PolarizationRotation from_matrix(const CMat& u, Target target = Target::Both);
    // Rotation of the polarization plane by theta.
    static PolarizationRotation linear(double theta, Target target = Target::Both);
};

GaussianState apply_rotation(const GaussianState& state, const PolarizationRotation& rot);

// Independent beamsplitter per mode: transmission eta_i in [0, 1],
// vacuum admixed through the open port.
struct LossMap {
    std::vector<double> eta;

    static LossMap uniform(int n_modes, double eta);
};

GaussianState apply_loss(const GaussianState& state, const LossMap& loss);

// a_i -> e^{i phi_i} a_i. N diagonal and all photon-number observables
// commuting with the number operators are unchanged.
GaussianState apply_mode_phases(const GaussianState& state, std::span<const double> phases);

// Cov(n_i, n_j) = |N_ij|^2 + |M_ij|^2 + delta_ij N_ii for a zero-mean
// Gaussian state (Wick pairing of the fourth moment).
double photon_covariance(const GaussianState& state, int i, int j);
double photon_covariance(const GaussianState& state, const ModeId& i, const ModeId& j);

} // namespace bsv
