#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>

namespace bsv {

using cd = std::complex<double>;

enum class Beam : int { A = 0, B = 1 };
enum class Pol : int { H = 0, V = 1 };

// One frequency-wavevector mode. A single pair contributes four modes,
// stored in the fixed order (AH, AV, BH, BV); this order is used for every
// matrix and amplitude table in the library.
struct ModeId {
    int pair_index = 0;
    Beam beam = Beam::A;
    Pol pol = Pol::H;
};

inline int mode_index(const ModeId& m) {
    if (m.pair_index < 0) throw std::invalid_argument("mode_index: negative pair_index");
    return 4 * m.pair_index + 2 * static_cast<int>(m.beam) + static_cast<int>(m.pol);
}

inline ModeId mode_from_index(int i) {
    if (i < 0) throw std::invalid_argument("mode_from_index: negative index");
    ModeId m;
    m.pair_index = i / 4;
    m.beam = ((i % 4) < 2) ? Beam::A : Beam::B;
    m.pol = ((i % 2) == 0) ? Pol::H : Pol::V;
    return m;
}

constexpr int kModesPerPair = 4;

// Channel offsets within a pair.
constexpr int kAH = 0;
constexpr int kAV = 1;
constexpr int kBH = 2;
constexpr int kBV = 3;

} // namespace bsv
