#ifndef DCF_RNG_HPP
#define DCF_RNG_HPP

#include <cstdint>
#include <random>

namespace dcf {

// SplitMix64 finalizer. Used to derive independent child seeds from a master
// seed so that every component (filter bank, forest, tree, fold, ...) is
// reproducible on its own, and so that parallel and serial training draw the
// same random numbers.
inline std::uint64_t mix_seed(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    return mix_seed(base ^ mix_seed(stream));
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    return derive_seed(derive_seed(base, a), b);
}

// mt19937_64 with fixed output mappings. The standard guarantees the engine's
// bit stream; the standard *distributions* are implementation-defined, so the
// uniform mappings live here to keep models bit-identical across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1): top 53 bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform on [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    // Uniform integer in [0, n). n must be > 0.
    std::size_t uniform_index(std::size_t n) {
        return static_cast<std::size_t>(uniform() * static_cast<double>(n));
    }

private:
    std::mt19937_64 engine_;
};

} // namespace dcf

#endif // DCF_RNG_HPP
