#pragma once

#include <cstdint>
#include <random>

namespace agfd {

using RngEngine = std::mt19937_64;

// splitmix64 finalizer; decorrelates nearby seed values.
inline std::uint64_t mix_seed(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derive an independent stream seed from (master, index). Chain calls to
// derive per-(replication, column) streams; results do not depend on the
// order in which streams are consumed, so parallel fan-out stays
// deterministic.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return mix_seed(master ^ mix_seed(index + 0x51ed270b8a03ae65ULL));
}

inline RngEngine make_engine(std::uint64_t seed) { return RngEngine(mix_seed(seed)); }

}  // namespace agfd
