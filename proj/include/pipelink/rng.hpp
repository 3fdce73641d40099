#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>

/**
 * Random-number plumbing for the Brownian walker oracle.
 *
 * Design goals, in order: (1) reproducibility — a (seed, stream) pair fully
 * determines the sequence, so walker k can always be given stream k no matter
 * which thread runs it; (2) speed — the walker inner loop draws one standard
 * normal per step and is the hot path of the whole project.
 *
 * Generator: xoshiro256++ (Blackman & Vigna), one independent instance per
 * stream, state seeded by a SplitMix64 scrambler of seed ^ golden*(stream+1).
 * Normals: 128-layer ziggurat (Marsaglia & Tsang) with the integer-compare
 * fast path, which accepts ~98.8% of draws with one table lookup, one integer
 * compare and one multiply.
 */
namespace pipelink::rng {

/// SplitMix64 scrambler; used only to expand a (seed, stream) pair into
/// xoshiro256++ state words.
struct SplitMix64 {
    std::uint64_t s;

    explicit SplitMix64(std::uint64_t seed) : s(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

/// xoshiro256++ with per-stream seeding. Distinct streams get unrelated
/// SplitMix64-scrambled states, so stream k is the same sequence whether it
/// runs on one worker thread or eight.
class Xoshiro256pp {
public:
    Xoshiro256pp(std::uint64_t seed, std::uint64_t stream) {
        SplitMix64 sm(seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1)));
        for (auto& w : state_) w = sm.next();
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in (0, 1]: top 53 bits of a draw, never exactly 0 so it
    /// is safe under log().
    double uniform01() { return u01(next()); }

    static double u01(std::uint64_t u) {
        return static_cast<double>((u >> 11) + 1) * 0x1.0p-53;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

namespace detail {

/// Precomputed ziggurat layers for the standard normal density.
/// R is the rightmost layer edge, V the common layer area.
struct ZigguratTables {
    static constexpr int kLayers = 128;
    double xtab[kLayers + 1];
    double ftab[kLayers + 1];
    double wtab[kLayers];       ///< xtab[i] * 2^-52: mantissa-to-x scale
    std::int64_t ktab[kLayers]; ///< integer acceptance threshold per layer

    ZigguratTables() {
        constexpr double R = 3.442619855899;
        constexpr double V = 9.91256303526217e-3;
        xtab[0] = V / std::exp(-0.5 * R * R);
        xtab[1] = R;
        for (int i = 2; i <= kLayers; ++i) {
            const double prev = xtab[i - 1];
            xtab[i] = std::sqrt(-2.0 * std::log(V / prev + std::exp(-0.5 * prev * prev)));
        }
        // xtab[kLayers] is ~0 up to rounding; pin it so the top layer is exact.
        xtab[kLayers] = 0.0;
        for (int i = 0; i <= kLayers; ++i)
            ftab[i] = std::exp(-0.5 * xtab[i] * xtab[i]);
        for (int i = 0; i < kLayers; ++i) {
            wtab[i] = xtab[i] * 0x1.0p-52;
            ktab[i] = static_cast<std::int64_t>((xtab[i + 1] / xtab[i]) * 0x1.0p52);
        }
    }
};

inline const ZigguratTables& ziggurat() {
    static const ZigguratTables tables;
    return tables;
}

} // namespace detail

/// One standard normal draw via the ziggurat. The fast path costs a single
/// 64-bit draw: low 7 bits pick the layer, the remaining bits form a signed
/// 53-bit mantissa that doubles as both the candidate and the accept test.
inline double standard_normal(Xoshiro256pp& g) {
    const auto& z = detail::ziggurat();
    constexpr double R = 3.442619855899;
    for (;;) {
        const std::uint64_t u = g.next();
        const int i = static_cast<int>(u & 127);
        const std::int64_t j = static_cast<std::int64_t>(u) >> 11; // signed mantissa
        if (std::llabs(j) < z.ktab[i])
            return static_cast<double>(j) * z.wtab[i];   // ~98.8% of draws
        if (i == 0) {
            // Tail beyond R: Marsaglia's exact tail sampler.
            double xx, yy;
            do {
                xx = -std::log(g.uniform01()) / R;
                yy = -std::log(g.uniform01());
            } while (yy + yy < xx * xx);
            const double t = R + xx;
            return (j < 0) ? -t : t;
        }
        // Wedge: accept if the point falls under the density.
        const double x = static_cast<double>(j) * z.wtab[i];
        const double f = z.ftab[i + 1] + g.uniform01() * (z.ftab[i] - z.ftab[i + 1]);
        if (f < std::exp(-0.5 * x * x))
            return x;
    }
}

} // namespace pipelink::rng
