#pragma once

#include <cstdint>
#include <limits>

namespace bsv {

// Philox4x32-10 counter-based generator (Salmon et al., SC 2011).
//
// Every pulse of the Monte Carlo gets its own stream keyed by
// (seed, pulse_index, purpose), so the sampled ensemble is a pure function
// of the configuration and does not depend on how pulses are distributed
// over worker threads.
class Philox4x32 {
public:
    using result_type = uint32_t;

    Philox4x32(uint64_t key, uint64_t stream_hi, uint32_t stream_lo) {
        key_[0] = static_cast<uint32_t>(key);
        key_[1] = static_cast<uint32_t>(key >> 32);
        ctr_[0] = 0; // block counter, incremented per generated block
        ctr_[1] = stream_lo;
        ctr_[2] = static_cast<uint32_t>(stream_hi);
        ctr_[3] = static_cast<uint32_t>(stream_hi >> 32);
        idx_ = 4;
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<uint32_t>::max(); }

    result_type operator()() {
        if (idx_ == 4) {
            generate_block();
            idx_ = 0;
        }
        return out_[idx_++];
    }

private:
    static void mul_hilo(uint32_t a, uint32_t b, uint32_t& lo, uint32_t& hi) {
        const uint64_t p = static_cast<uint64_t>(a) * b;
        lo = static_cast<uint32_t>(p);
        hi = static_cast<uint32_t>(p >> 32);
    }

    static void round(uint32_t ctr[4], const uint32_t key[2]) {
        uint32_t lo0, hi0, lo1, hi1;
        mul_hilo(0xD2511F53u, ctr[0], lo0, hi0);
        mul_hilo(0xCD9E8D57u, ctr[2], lo1, hi1);
        const uint32_t r0 = hi1 ^ ctr[1] ^ key[0];
        const uint32_t r1 = lo1;
        const uint32_t r2 = hi0 ^ ctr[3] ^ key[1];
        const uint32_t r3 = lo0;
        ctr[0] = r0;
        ctr[1] = r1;
        ctr[2] = r2;
        ctr[3] = r3;
    }

    void generate_block() {
        uint32_t c[4] = {ctr_[0], ctr_[1], ctr_[2], ctr_[3]};
        uint32_t k[2] = {key_[0], key_[1]};
        for (int r = 0; r < 10; ++r) {
            if (r > 0) {
                k[0] += 0x9E3779B9u;
                k[1] += 0xBB67AE85u;
            }
            round(c, k);
        }
        out_[0] = c[0];
        out_[1] = c[1];
        out_[2] = c[2];
        out_[3] = c[3];
        ++ctr_[0]; // 2^32 blocks per stream before wrap
    }

    uint32_t ctr_[4];
    uint32_t key_[2];
    uint32_t out_[4];
    int idx_;
};

// Stream for one pulse. `purpose` separates draws with different roles
// (generation, detection, measurement basis, ...) inside the same pulse.
inline Philox4x32 pulse_stream(uint64_t seed, uint64_t pulse_index, uint32_t purpose) {
    return Philox4x32(seed, pulse_index, purpose);
}

// Stafford mix 13; used to derive well-separated child seeds from one
// manifest seed.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

} // namespace bsv
