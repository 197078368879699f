#pragma once

#include <cstdint>
#include <vector>

namespace nss {

// Deterministic 64-bit stream (splitmix64). Output depends only on the seed
// and the request sequence, bit-identical across platforms; std::random
// distributions are avoided on purpose because their output is
// implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    // Standard normal via Box-Muller; consumes exactly two draws.
    double normal();

    // Uniform integer in [0, n).
    int uniform_int(int n) { return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n)); }

    // Independent substream; does not advance this stream.
    Rng split(std::uint64_t stream) const { return Rng(derive(state_, stream)); }

    // Stateless sub-seed derivation, usable without an Rng instance.
    static std::uint64_t derive(std::uint64_t base, std::uint64_t stream);

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(next_u64() % i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    return Rng::derive(base, stream);
}

}  // namespace nss
