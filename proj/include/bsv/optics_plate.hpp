#pragma once

#include <array>
#include <span>
#include <vector>

namespace bsv {

// Multiple-order birefringent plate in crystal quartz. The plate is pure
// phase: per wavelength and polarization the field picks up k^{o,e} d, no
// loss or interface reflection.

enum class Ray { Ordinary, Extraordinary };

struct PlateSpec {
    double thickness = 170e-6; // m
    double lambda_a = 635e-9;  // m
    double lambda_b = 805e-9;  // m
};

// Sellmeier evaluation for alpha-quartz, Ghosh (1999) coefficient set,
// valid over 0.4-1.1 um (fit range 0.198-2.05 um). H rides the ordinary
// index, V the extraordinary one.
double refractive_index(double lambda_m, Ray ray);

// |phi_o - phi_e| = (2 pi d / lambda) |n_o - n_e|, radians.
double oe_delay(const PlateSpec& spec, double lambda_m);

// Per-mode phases (AH, AV, BH, BV) = (k_A^o d, k_A^e d, k_B^o d, k_B^e d),
// ready for apply_mode_phases.
std::array<double, 4> plate_mode_phases(const PlateSpec& spec);

// Phase mismatch from an exact pi swap of the anomalous-pair sign:
// |oe_delay(lambda_A) - oe_delay(lambda_B)| - pi, wrapped to [-pi, pi).
double conversion_residual(const PlateSpec& spec);

// Witness left-hand side of a plus-pairing state converted by a plate whose
// o-e delay difference misses pi by `residual`: 2 cosh^2(gamma) (1 - cos r).
double converted_witness_bound(double gamma, double residual);

struct PhaseScanRow {
    double phi = 0.0;
    double nrf_s2 = 0.0;
    double nrf_min = 0.0; // envelope at this path offset
    double nrf_max = 0.0;
};

// NRF of S2 versus the interferometer phase. A path-length offset between
// the arms washes out the interference term with visibility
// exp(-(dL / (c tau))^2), tau = 5 ps of pump coherence.
std::vector<PhaseScanRow> mz_phase_scan(double gamma, std::span<const double> phi_grid,
                                        double path_offset_m);

} // namespace bsv
