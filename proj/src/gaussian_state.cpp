#include "bsv/gaussian_state.hpp"

#include <cmath>
#include <numbers>

namespace bsv {

namespace {

void require_gain(double gamma) {
    if (!std::isfinite(gamma) || gamma < 0.0)
        throw std::invalid_argument("parametric gain must be finite and >= 0");
}

} // namespace

GaussianState GaussianState::from_matrices(const CMat& number, const CMat& anomalous) {
    if (number.rows() != number.cols() || anomalous.rows() != anomalous.cols() ||
        number.rows() != anomalous.rows() || number.rows() % kModesPerPair != 0)
        throw std::invalid_argument("GaussianState: matrices must be square with 4*n_pairs modes");
    GaussianState s(number.rows() / kModesPerPair);
    s.number_ = number;
    s.anomalous_ = anomalous;
    s.check_structure();
    return s;
}

void GaussianState::check_structure(double tol) const {
    if (!number_.is_hermitian(tol)) throw std::invalid_argument("GaussianState: N not Hermitian");
    if (!anomalous_.is_symmetric(tol)) throw std::invalid_argument("GaussianState: M not symmetric");
    for (int i = 0; i < n_modes(); ++i)
        if (number_(i, i).real() < -tol) throw std::invalid_argument("GaussianState: negative mode occupation");
}

GaussianState make_singlet(double gamma) {
    require_gain(gamma);
    GaussianState s(1);
    const double sh = std::sinh(gamma);
    const double cs = std::cosh(gamma) * sh;
    for (int i = 0; i < 4; ++i) s.number_(i, i) = sh * sh;
    s.anomalous_(kAH, kBV) = cs;
    s.anomalous_(kBV, kAH) = cs;
    s.anomalous_(kAV, kBH) = -cs;
    s.anomalous_(kBH, kAV) = -cs;
    return s;
}

GaussianState make_phi_state(double gamma, double phi) {
    require_gain(gamma);
    GaussianState s(1);
    const double sh = std::sinh(gamma);
    const double cs = std::cosh(gamma) * sh;
    const cd w = std::polar(cs, phi);
    for (int i = 0; i < 4; ++i) s.number_(i, i) = sh * sh;
    s.anomalous_(kAH, kBH) = cs;
    s.anomalous_(kBH, kAH) = cs;
    s.anomalous_(kAV, kBV) = w;
    s.anomalous_(kBV, kAV) = w;
    return s;
}

GaussianState make_triplet(TripletKind kind, double gamma) {
    switch (kind) {
        case TripletKind::PsiPlus: {
            GaussianState s = make_singlet(gamma);
            CMat m = s.anomalous_matrix();
            m(kAV, kBH) = -m(kAV, kBH);
            m(kBH, kAV) = -m(kBH, kAV);
            return GaussianState::from_matrices(s.number_matrix(), m);
        }
        case TripletKind::PhiMinus:
            return make_phi_state(gamma, std::numbers::pi);
        case TripletKind::PhiPlus:
            return make_phi_state(gamma, 0.0);
    }
    throw std::invalid_argument("make_triplet: unknown kind");
}

PolarizationRotation PolarizationRotation::from_matrix(const CMat& u, Target target) {
    if (u.rows() != 2 || u.cols() != 2) throw std::invalid_argument("PolarizationRotation: matrix must be 2x2");
    if (!u.is_unitary(1e-12)) throw std::invalid_argument("PolarizationRotation: matrix not unitary");
    PolarizationRotation r;
    r.u = u;
    r.target = target;
    return r;
}

PolarizationRotation PolarizationRotation::linear(double theta, Target target) {
    CMat u(2, 2);
    u(0, 0) = std::cos(theta);
    u(0, 1) = -std::sin(theta);
    u(1, 0) = std::sin(theta);
    u(1, 1) = std::cos(theta);
    return from_matrix(u, target);
}

GaussianState apply_rotation(const GaussianState& state, const PolarizationRotation& rot) {
    if (rot.u.rows() != 2 || !rot.u.is_unitary(1e-12))
        throw std::invalid_argument("apply_rotation: rotation not unitary");
    const int n = state.n_modes();

    // Block unitary over all modes: the 2x2 acts on (H, V) of the selected
    // beam(s) in every pair, identity elsewhere.
    CMat v = CMat::identity(n);
    for (int p = 0; p < state.n_pairs(); ++p) {
        for (int b = 0; b < 2; ++b) {
            const bool selected = rot.target == PolarizationRotation::Target::Both ||
                                  (b == 0 && rot.target == PolarizationRotation::Target::BeamA) ||
                                  (b == 1 && rot.target == PolarizationRotation::Target::BeamB);
            if (!selected) continue;
            const int h = kModesPerPair * p + 2 * b;
            v(h, h) = rot.u(0, 0);
            v(h, h + 1) = rot.u(0, 1);
            v(h + 1, h) = rot.u(1, 0);
            v(h + 1, h + 1) = rot.u(1, 1);
        }
    }

    GaussianState out(state.n_pairs());
    out.number_ = v.conj() * state.number_ * v.transpose();
    out.anomalous_ = v * state.anomalous_ * v.transpose();
    out.check_structure();
    return out;
}

LossMap LossMap::uniform(int n_modes, double eta) {
    LossMap l;
    l.eta.assign(static_cast<size_t>(n_modes), eta);
    return l;
}

GaussianState apply_loss(const GaussianState& state, const LossMap& loss) {
    const int n = state.n_modes();
    if (static_cast<int>(loss.eta.size()) != n)
        throw std::invalid_argument("apply_loss: one transmission per mode required");
    for (double e : loss.eta)
        if (!(e >= 0.0 && e <= 1.0)) throw std::invalid_argument("apply_loss: transmission outside [0, 1]");

    GaussianState out(state.n_pairs());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double f = std::sqrt(loss.eta[i] * loss.eta[j]);
            out.number_(i, j) = f * state.number_(i, j);
            out.anomalous_(i, j) = f * state.anomalous_(i, j);
        }
    return out;
}

GaussianState apply_mode_phases(const GaussianState& state, std::span<const double> phases) {
    const int n = state.n_modes();
    if (static_cast<int>(phases.size()) != n)
        throw std::invalid_argument("apply_mode_phases: one phase per mode required");

    GaussianState out(state.n_pairs());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            out.number_(i, j) = std::polar(1.0, phases[j] - phases[i]) * state.number_(i, j);
            out.anomalous_(i, j) = std::polar(1.0, phases[i] + phases[j]) * state.anomalous_(i, j);
        }
    return out;
}

double photon_covariance(const GaussianState& state, int i, int j) {
    if (i < 0 || j < 0 || i >= state.n_modes() || j >= state.n_modes())
        throw std::invalid_argument("photon_covariance: mode index out of range");
    const double nn = std::norm(state.number_matrix()(i, j));
    const double mm = std::norm(state.anomalous_matrix()(i, j));
    double c = nn + mm;
    if (i == j) c += state.number_matrix()(i, i).real();
    return c;
}

double photon_covariance(const GaussianState& state, const ModeId& i, const ModeId& j) {
    return photon_covariance(state, mode_index(i), mode_index(j));
}

} // namespace bsv
