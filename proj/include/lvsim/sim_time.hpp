#ifndef LVSIM_SIM_TIME_HPP
#define LVSIM_SIM_TIME_HPP

#include <cmath>
#include <cstdint>

namespace lvsim {

// Simulated time in integer nanoseconds. Integer ticks keep event ordering
// and tie-breaking exactly reproducible across runs.
using SimTime = std::int64_t;

constexpr SimTime kNsPerUs = 1'000;
constexpr SimTime kNsPerMs = 1'000'000;
constexpr SimTime kNsPerSec = 1'000'000'000;

constexpr SimTime usec(std::int64_t n) { return n * kNsPerUs; }
constexpr SimTime msec(std::int64_t n) { return n * kNsPerMs; }
constexpr SimTime seconds(std::int64_t n) { return n * kNsPerSec; }

inline SimTime from_seconds(double s) {
    return static_cast<SimTime>(std::llround(s * 1e9));
}

inline double to_seconds(SimTime t) { return static_cast<double>(t) * 1e-9; }

}  // namespace lvsim

#endif
