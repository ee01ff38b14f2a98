#include "bsv/fock_state.hpp"

#include <cmath>
#include <numbers>

namespace bsv {

FockState::FockState(int n_max) : n_max_(n_max) {
    if (n_max < 1) throw std::invalid_argument("FockState: n_max must be >= 1");
    const size_t l = static_cast<size_t>(n_max) + 1;
    table_.assign(l * l * l * l, cd{});
}

double FockState::norm_squared() const {
    double s = 0.0;
    for (const cd& a : table_) s += std::norm(a);
    return s;
}

double truncation_tail(double gamma, int n_max) {
    const double t = std::tanh(gamma);
    const double x = t * t;
    if (x == 0.0) return 0.0;
    // sum_{N > L} (N+1) x^N * (1-x)^2 = x^{L+1} ((L+2) - (L+1) x)
    const double l = static_cast<double>(n_max);
    return std::pow(x, l + 1.0) * ((l + 2.0) - (l + 1.0) * x);
}

int min_nmax_for_tail(double gamma, double bound) {
    for (int l = 1; l <= 4096; ++l)
        if (truncation_tail(gamma, l) < bound) return l;
    throw TruncationError("min_nmax_for_tail: no feasible truncation below the requested bound");
}

namespace {

void require_tail(double gamma, int n_max, double max_tail) {
    const double tail = truncation_tail(gamma, n_max);
    if (!(tail < max_tail))
        throw TruncationError("Fock truncation tail " + std::to_string(tail) + " exceeds bound " +
                              std::to_string(max_tail) + "; increase n_max");
}

} // namespace

FockState build_singlet(double gamma, int n_max, double max_tail) {
    if (!std::isfinite(gamma) || gamma < 0.0) throw std::invalid_argument("build_singlet: bad gamma");
    require_tail(gamma, n_max, max_tail);
    FockState s(n_max);
    s.tail_bound_ = truncation_tail(gamma, n_max);
    const double t = std::tanh(gamma);
    const double c2 = std::cosh(gamma) * std::cosh(gamma);
    for (int n = 0; n <= n_max; ++n)
        for (int m = 0; n + m <= n_max; ++m) {
            const double sign = (m % 2 == 0) ? 1.0 : -1.0;
            s.at(n, m, m, n) = sign * std::pow(t, n + m) / c2;
        }
    return s;
}

FockState build_phi_state(double gamma, double phi, int n_max, double max_tail) {
    if (!std::isfinite(gamma) || gamma < 0.0) throw std::invalid_argument("build_phi_state: bad gamma");
    require_tail(gamma, n_max, max_tail);
    FockState s(n_max);
    s.tail_bound_ = truncation_tail(gamma, n_max);
    const double t = std::tanh(gamma);
    const double c2 = std::cosh(gamma) * std::cosh(gamma);
    for (int n = 0; n <= n_max; ++n)
        for (int m = 0; n + m <= n_max; ++m)
            s.at(n, m, n, m) = std::polar(std::pow(t, n + m) / c2, m * phi);
    return s;
}

namespace {

cd ipow(cd base, int e) {
    cd r = 1.0;
    for (int k = 0; k < e; ++k) r *= base;
    return r;
}

// |out> = sum_ij C_ij a_i^dag a_j |in>. C must be beam-local so per-beam
// totals (and hence the table bounds) are preserved.
std::vector<cd> apply_quadratic(const FockState& state, const CMat& c) {
    const int l = state.n_max();
    const size_t dim = static_cast<size_t>(l) + 1;
    std::vector<cd> out(dim * dim * dim * dim, cd{});
    int n[4];
    for (n[0] = 0; n[0] <= l; ++n[0])
        for (n[1] = 0; n[1] + n[0] <= l; ++n[1])
            for (n[2] = 0; n[2] <= l; ++n[2])
                for (n[3] = 0; n[3] + n[2] <= l; ++n[3]) {
                    const cd amp = state.amplitude(n[0], n[1], n[2], n[3]);
                    if (amp == cd{}) continue;
                    for (int i = 0; i < 4; ++i)
                        for (int j = 0; j < 4; ++j) {
                            const cd cij = c(i, j);
                            if (cij == cd{}) continue;
                            if (i == j) {
                                const size_t idx = ((static_cast<size_t>(n[0]) * dim + n[1]) * dim + n[2]) * dim + n[3];
                                out[idx] += cij * static_cast<double>(n[i]) * amp;
                                continue;
                            }
                            if (n[j] == 0) continue;
                            int m[4] = {n[0], n[1], n[2], n[3]};
                            m[j] -= 1;
                            m[i] += 1;
                            if (m[i] > l) throw std::logic_error("apply_quadratic: operator left the table");
                            const double f = std::sqrt(static_cast<double>(n[j]) * (n[i] + 1.0));
                            const size_t idx = ((static_cast<size_t>(m[0]) * dim + m[1]) * dim + m[2]) * dim + m[3];
                            out[idx] += cij * f * amp;
                        }
                }
    return out;
}

cd inner(std::span<const cd> a, std::span<const cd> b) {
    cd s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

double norm2(std::span<const cd> a) {
    double s = 0.0;
    for (const cd& v : a) s += std::norm(v);
    return s;
}

} // namespace

StokesMoments stokes_moments_exact(const FockState& state) {
    const double nn = state.norm_squared();
    if (!(nn > 0.0)) throw std::invalid_argument("stokes_moments_exact: zero-norm state");
    StokesMoments m;
    const auto table = state.table();

    const auto s0 = apply_quadratic(state, stokes_coefficient_matrix(0, 1));
    m.mean_s0 = inner(table, s0).real() / nn;

    double* means[3] = {&m.mean_s1, &m.mean_s2, &m.mean_s3};
    double* vars[3] = {&m.var_s1, &m.var_s2, &m.var_s3};
    for (int i = 1; i <= 3; ++i) {
        const auto si = apply_quadratic(state, stokes_coefficient_matrix(i, 1));
        const double mean = inner(table, si).real() / nn;
        *means[i - 1] = mean;
        *vars[i - 1] = norm2(si) / nn - mean * mean;
    }
    return m;
}

FockState apply_rotation_fock(const FockState& state, const PolarizationRotation& rot) {
    if (rot.u.rows() != 2 || !rot.u.is_unitary(1e-12))
        throw std::invalid_argument("apply_rotation_fock: rotation not unitary");
    const int l = state.n_max();

    // Creation operator images for the annihilation-convention unitary:
    // a_H^dag -> u00* ... specifically a_i^dag -> sum_j u_ji a_j^dag.
    const cd alpha = rot.u(0, 0), beta = rot.u(1, 0);
    const cd gamma = rot.u(0, 1), delta = rot.u(1, 1);

    // Binomials and sqrt-factorials up to the table size.
    std::vector<std::vector<double>> choose(l + 1, std::vector<double>(l + 1, 0.0));
    for (int n = 0; n <= l; ++n) {
        choose[n][0] = 1.0;
        for (int k = 1; k <= n; ++k)
            choose[n][k] = choose[n - 1][k - 1] + (k <= n - 1 ? choose[n - 1][k] : 0.0);
    }
    std::vector<double> lfact(l + 1, 0.0);
    for (int n = 1; n <= l; ++n) lfact[n] = lfact[n - 1] + std::log(static_cast<double>(n));

    // Sector transfer matrices: within total S, out(m1) = sum_n1 T[m1][n1] in(n1).
    std::vector<std::vector<std::vector<cd>>> transfer(l + 1);
    for (int s = 0; s <= l; ++s) {
        transfer[s].assign(s + 1, std::vector<cd>(s + 1, cd{}));
        for (int n1 = 0; n1 <= s; ++n1) {
            const int n2 = s - n1;
            for (int m1 = 0; m1 <= s; ++m1) {
                const int m2 = s - m1;
                cd sum = 0.0;
                const int pmin = std::max(0, m1 - n2);
                const int pmax = std::min(n1, m1);
                for (int p = pmin; p <= pmax; ++p) {
                    const int q = m1 - p;
                    cd term = choose[n1][p] * choose[n2][q];
                    term *= ipow(alpha, p) * ipow(beta, n1 - p);
                    term *= ipow(gamma, q) * ipow(delta, n2 - q);
                    sum += term;
                }
                const double f = std::exp(0.5 * (lfact[m1] + lfact[m2] - lfact[n1] - lfact[n2]));
                transfer[s][m1][n1] = sum * f;
            }
        }
    }

    const bool on_a = rot.target != PolarizationRotation::Target::BeamB;
    const bool on_b = rot.target != PolarizationRotation::Target::BeamA;

    FockState out = state;
    auto rotate_beam = [&](FockState& st, int beam) {
        FockState next(l);
        next.tail_bound_ = st.tail_bound_;
        // beam 0 transforms indices (0,1) for fixed (2,3); beam 1 the converse.
        for (int o1 = 0; o1 <= l; ++o1)
            for (int o2 = 0; o1 + o2 <= l; ++o2)
                for (int s = 0; s <= l; ++s)
                    for (int m1 = 0; m1 <= s; ++m1) {
                        cd acc = 0.0;
                        for (int n1 = 0; n1 <= s; ++n1) {
                            const cd t = transfer[s][m1][n1];
                            if (t == cd{}) continue;
                            const cd amp = beam == 0 ? st.amplitude(n1, s - n1, o1, o2)
                                                     : st.amplitude(o1, o2, n1, s - n1);
                            if (amp == cd{}) continue;
                            acc += t * amp;
                        }
                        if (acc == cd{}) continue;
                        if (beam == 0)
                            next.at(m1, s - m1, o1, o2) = acc;
                        else
                            next.at(o1, o2, m1, s - m1) = acc;
                    }
        st = std::move(next);
    };
    if (on_a) rotate_beam(out, 0);
    if (on_b) rotate_beam(out, 1);
    return out;
}

FockState apply_mode_phases_fock(const FockState& state, std::span<const double> phases) {
    if (phases.size() != 4) throw std::invalid_argument("apply_mode_phases_fock: need 4 phases");
    const int l = state.n_max();
    FockState out = state;
    for (int a = 0; a <= l; ++a)
        for (int b = 0; b <= l; ++b)
            for (int c = 0; c <= l; ++c)
                for (int d = 0; d <= l; ++d) {
                    cd& amp = out.at(a, b, c, d);
                    if (amp == cd{}) continue;
                    amp *= std::polar(1.0, a * phases[0] + b * phases[1] + c * phases[2] + d * phases[3]);
                }
    return out;
}

double fock_photon_covariance(const FockState& state, int i, int j) {
    if (i < 0 || i > 3 || j < 0 || j > 3)
        throw std::invalid_argument("fock_photon_covariance: mode index out of range");
    const int l = state.n_max();
    const double nn = state.norm_squared();
    double mi = 0.0, mj = 0.0, mij = 0.0;
    int n[4];
    for (n[0] = 0; n[0] <= l; ++n[0])
        for (n[1] = 0; n[1] <= l; ++n[1])
            for (n[2] = 0; n[2] <= l; ++n[2])
                for (n[3] = 0; n[3] <= l; ++n[3]) {
                    const double p = std::norm(state.amplitude(n[0], n[1], n[2], n[3]));
                    if (p == 0.0) continue;
                    mi += p * n[i];
                    mj += p * n[j];
                    mij += p * n[i] * n[j];
                }
    mi /= nn;
    mj /= nn;
    mij /= nn;
    return mij - mi * mj;
}

namespace {

CMat beam_stokes_matrix(int i, int beam) {
    CMat full = stokes_coefficient_matrix(i, 1);
    CMat c(4, 4);
    const int h = 2 * beam;
    for (int r = h; r <= h + 1; ++r)
        for (int s = h; s <= h + 1; ++s) c(r, s) = full(r, s);
    return c;
}

} // namespace

double fock_beam_stokes_square_sum(const FockState& state, int beam) {
    const double nn = state.norm_squared();
    double total = 0.0;
    for (int i = 1; i <= 3; ++i) {
        const auto si = apply_quadratic(state, beam_stokes_matrix(i, beam));
        total += norm2(si) / nn;
    }
    return total;
}

double fock_beam_s0_s0p2(const FockState& state, int beam) {
    const int l = state.n_max();
    const double nn = state.norm_squared();
    double acc = 0.0;
    int n[4];
    for (n[0] = 0; n[0] <= l; ++n[0])
        for (n[1] = 0; n[1] <= l; ++n[1])
            for (n[2] = 0; n[2] <= l; ++n[2])
                for (n[3] = 0; n[3] <= l; ++n[3]) {
                    const double p = std::norm(state.amplitude(n[0], n[1], n[2], n[3]));
                    if (p == 0.0) continue;
                    const double s0 = beam == 0 ? n[0] + n[1] : n[2] + n[3];
                    acc += p * s0 * (s0 + 2.0);
                }
    return acc / nn;
}

std::vector<double> schmidt_spectrum(double gamma, int n_max) {
    if (!std::isfinite(gamma) || gamma < 0.0) throw std::invalid_argument("schmidt_spectrum: bad gamma");
    if (n_max < 0) throw std::invalid_argument("schmidt_spectrum: bad n_max");
    const double t = std::tanh(gamma);
    const double x = t * t;
    const double c2 = std::cosh(gamma) * std::cosh(gamma);
    std::vector<double> lambda(static_cast<size_t>(n_max) + 1);
    double v = 1.0 / c2;
    for (int n = 0; n <= n_max; ++n) {
        lambda[n] = v;
        v *= x;
    }
    return lambda;
}

double schmidt_number_of_spectrum(std::span<const double> lambda) {
    double s1 = 0.0, s2 = 0.0;
    for (double l : lambda) {
        s1 += l;
        s2 += l * l;
    }
    if (!(s2 > 0.0)) throw std::invalid_argument("schmidt_number_of_spectrum: empty spectrum");
    return s1 * s1 / s2;
}

} // namespace bsv
