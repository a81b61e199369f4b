#ifndef LVSIM_RNG_HPP
#define LVSIM_RNG_HPP

#include <cmath>
#include <cstdint>

namespace lvsim {

// splitmix64; used both as a seed mixer and as the generator itself.
// Hand-rolled so that streams are identical on every platform (the standard
// library distributions are implementation-defined).
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {
        // Warm up so that near-zero seeds do not produce near-zero output.
        splitmix64(state_);
        splitmix64(state_);
    }

    std::uint64_t next_u64() { return splitmix64(state_); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Exponential with the given mean (> 0).
    double exponential(double mean) {
        double u = uniform01();
        return -mean * std::log1p(-u);
    }

private:
    std::uint64_t state_;
};

// Derives an independent stream seed from a run seed and a stream tag.
inline std::uint64_t stream_seed(std::uint64_t run_seed, std::uint64_t tag) {
    std::uint64_t s = run_seed ^ (0x632be59bd9b4e019ULL + tag * 0x9e3779b97f4a7c15ULL);
    splitmix64(s);
    return s;
}

}  // namespace lvsim

#endif
