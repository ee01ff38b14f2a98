#pragma once

#include <complex>
#include <cstdint>
#include <variant>
#include <vector>

#include "bsv/stokes.hpp"

namespace bsv {

// Classical mixtures of product states rho = sum_j p_j rho_j^A x rho_j^B,
// with each beam factor either a polarized coherent state or unpolarized
// thermal light. Used to exercise the separable side of the witness: no
// such ensemble can push the witness below 2.

struct CoherentBeam {
    cd alpha_h{0.0, 0.0};
    cd alpha_v{0.0, 0.0};
};

struct ThermalBeam {
    double mean_photons = 0.0; // split evenly over H and V
};

using BeamComponent = std::variant<CoherentBeam, ThermalBeam>;

struct SeparableComponent {
    double weight = 1.0;
    BeamComponent beam_a;
    BeamComponent beam_b;
};

struct SeparableEnsembleConfig {
    std::vector<SeparableComponent> components;
};

// Exact moments of the mixture (no sampling noise).
StokesMoments separable_moments_analytic(const SeparableEnsembleConfig& config);

// Pulse-resolved Monte Carlo of the same mixture; each Stokes component is
// measured on its own ensemble, as in the experiment. Standard errors are
// filled in.
StokesMoments sample_separable_ensemble(const SeparableEnsembleConfig& config, long long pulses,
                                        uint64_t seed);

} // namespace bsv
