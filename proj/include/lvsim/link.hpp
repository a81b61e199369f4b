#ifndef LVSIM_LINK_HPP
#define LVSIM_LINK_HPP

#include <cmath>

#include "lvsim/sim_time.hpp"

namespace lvsim {

// A packet of s bits occupies the link for s/capacity seconds of
// serialization plus the propagation delay before arrival.
inline SimTime serialization_time(double capacity_bps, int size_bits) {
    return static_cast<SimTime>(
        std::llround(static_cast<double>(size_bits) * 1e9 / capacity_bps));
}

// pre: the link is idle for this sender at depart.
inline SimTime transmit_arrival(double capacity_bps, SimTime prop_delay,
                                SimTime depart, int size_bits) {
    return depart + serialization_time(capacity_bps, size_bits) + prop_delay;
}

}  // namespace lvsim

#endif
