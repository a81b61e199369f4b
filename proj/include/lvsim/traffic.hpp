#ifndef LVSIM_TRAFFIC_HPP
#define LVSIM_TRAFFIC_HPP

#include <cstdint>
#include <deque>

#include "lvsim/packet.hpp"
#include "lvsim/rng.hpp"
#include "lvsim/sim_time.hpp"

namespace lvsim {

enum class TrafficKind { Constant, SquareWave, Poisson };

// Interfering ("guaranteed") traffic bound to one link direction. It has
// strict priority over video and is never queued behind it or dropped.
struct InterferenceSpec {
    TrafficKind kind = TrafficKind::Constant;
    double rate_bps = 0;       // constant rate / square-wave low / Poisson mean
    double high_bps = 0;       // square-wave high
    SimTime half_period = 0;   // square-wave dwell per level; first level is low
};

// Packetized arrival process for an InterferenceSpec. Packets are cell-sized
// and materialized lazily, so an idle link costs nothing until it is probed.
//
// cumulative_bits() is the accounting view used by ERICA's guaranteed-rate
// measurement and by the goodput-ratio denominator: exact closed form for the
// deterministic kinds, realized packet count for Poisson.
class InterferenceSource {
public:
    InterferenceSource(const InterferenceSpec& spec, std::uint64_t seed);

    // Materializes all arrivals <= t into the pending queue.
    void generate_to(SimTime t);

    bool pending_empty() const { return pending_.empty(); }
    SimTime pending_front() const { return pending_.front(); }
    void pop_pending() { pending_.pop_front(); }

    // Bits arrived in (0, t]. Monotone in t; Poisson queries must be asked
    // with non-decreasing t (the realized count cannot be rewound).
    double cumulative_bits(SimTime t);

    // Mean rate over a window, per the accounting view above.
    double occupied_bandwidth(SimTime w0, SimTime w1);

    const InterferenceSpec& spec() const { return spec_; }

private:
    SimTime next_arrival_after(SimTime arrival);

    InterferenceSpec spec_;
    Rng rng_;
    std::deque<SimTime> pending_;
    SimTime next_gen_ = 0;  // next arrival not yet materialized
    std::int64_t generated_ = 0;
    SimTime last_query_ = 0;
};

}  // namespace lvsim

#endif
