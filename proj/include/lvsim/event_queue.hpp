#ifndef LVSIM_EVENT_QUEUE_HPP
#define LVSIM_EVENT_QUEUE_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "lvsim/sim_time.hpp"

namespace lvsim {

// Deterministic discrete-event scheduler. Events at the same tick are
// dispatched in insertion order.
class EventQueue {
public:
    using Handler = std::function<void()>;

    SimTime now() const { return now_; }

    // Scheduling in the past is a programming error and aborts.
    void schedule(SimTime at, Handler fn);

    // Dispatches the next event; returns false when empty.
    bool run_next();

    // Dispatches every event with time <= t_end; the clock ends at t_end.
    void run_until(SimTime t_end);

    std::size_t pending() const { return heap_.size(); }
    std::uint64_t dispatched() const { return dispatched_; }

private:
    struct Entry {
        SimTime at;
        std::uint64_t seq;
        Handler fn;
        bool operator>(const Entry& o) const {
            if (at != o.at) return at > o.at;
            return seq > o.seq;
        }
    };

    std::vector<Entry> heap_;  // min-heap via std::push_heap with greater
    SimTime now_ = 0;
    std::uint64_t next_seq_ = 0;
    std::uint64_t dispatched_ = 0;
};

}  // namespace lvsim

#endif
