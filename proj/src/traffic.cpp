#include "lvsim/traffic.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace lvsim {

namespace {

SimTime gap_for_rate(double rate_bps) {
    assert(rate_bps > 0);
    double g = static_cast<double>(kCellBits) * 1e9 / rate_bps;
    return std::max<SimTime>(1, static_cast<SimTime>(std::llround(g)));
}

}  // namespace

InterferenceSource::InterferenceSource(const InterferenceSpec& spec, std::uint64_t seed)
    : spec_(spec), rng_(seed) {
    switch (spec_.kind) {
        case TrafficKind::Constant:
        case TrafficKind::SquareWave:
            next_gen_ = 0;  // first packet at t = 0
            break;
        case TrafficKind::Poisson: {
            double mean_gap = static_cast<double>(kCellBits) * 1e9 / spec_.rate_bps;
            next_gen_ = static_cast<SimTime>(std::llround(rng_.exponential(mean_gap)));
            break;
        }
    }
}

SimTime InterferenceSource::next_arrival_after(SimTime arrival) {
    switch (spec_.kind) {
        case TrafficKind::Constant:
            return arrival + gap_for_rate(spec_.rate_bps);
        case TrafficKind::SquareWave: {
            // Emission restarts at each level transition so transitions fall
            // at exact multiples of half_period.
            SimTime phase = arrival / spec_.half_period;
            bool high = (phase % 2) == 1;
            SimTime candidate = arrival + gap_for_rate(high ? spec_.high_bps : spec_.rate_bps);
            SimTime phase_end = (phase + 1) * spec_.half_period;
            return candidate < phase_end ? candidate : phase_end;
        }
        case TrafficKind::Poisson: {
            double mean_gap = static_cast<double>(kCellBits) * 1e9 / spec_.rate_bps;
            SimTime g = static_cast<SimTime>(std::llround(rng_.exponential(mean_gap)));
            return arrival + std::max<SimTime>(1, g);
        }
    }
    return arrival + 1;
}

void InterferenceSource::generate_to(SimTime t) {
    while (next_gen_ <= t) {
        pending_.push_back(next_gen_);
        ++generated_;
        next_gen_ = next_arrival_after(next_gen_);
    }
}

double InterferenceSource::cumulative_bits(SimTime t) {
    switch (spec_.kind) {
        case TrafficKind::Constant:
            return spec_.rate_bps * to_seconds(t);
        case TrafficKind::SquareWave: {
            SimTime period = 2 * spec_.half_period;
            SimTime full = t / period;
            SimTime rem = t - full * period;
            SimTime low_time = full * spec_.half_period + std::min(rem, spec_.half_period);
            SimTime high_time = full * spec_.half_period + std::max<SimTime>(0, rem - spec_.half_period);
            return spec_.rate_bps * to_seconds(low_time) + spec_.high_bps * to_seconds(high_time);
        }
        case TrafficKind::Poisson:
            // Realized counts are only available going forward in time.
            assert(t >= last_query_);
            last_query_ = t;
            generate_to(t);
            return static_cast<double>(generated_) * kCellBits;
    }
    return 0;
}

double InterferenceSource::occupied_bandwidth(SimTime w0, SimTime w1) {
    assert(w1 > w0);
    double b0 = cumulative_bits(w0);
    double b1 = cumulative_bits(w1);
    return (b1 - b0) / to_seconds(w1 - w0);
}

}  // namespace lvsim
