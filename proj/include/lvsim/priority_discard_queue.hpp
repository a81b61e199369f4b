#ifndef LVSIM_PRIORITY_DISCARD_QUEUE_HPP
#define LVSIM_PRIORITY_DISCARD_QUEUE_HPP

#include <deque>
#include <optional>

#include "lvsim/packet.hpp"

namespace lvsim {

// FIFO queue of video packets with a bounded occupancy. On overflow the
// packet discarded is always one holding the numerically largest layer index
// present (lowest priority); among equals, the most recently enqueued.
class PriorityDiscardQueue {
public:
    enum class EnqueueOutcome { Accepted, DroppedIncoming, DroppedOther };

    struct EnqueueResult {
        EnqueueOutcome outcome = EnqueueOutcome::Accepted;
        std::optional<Packet> victim;  // set for DroppedOther
    };

    explicit PriorityDiscardQueue(int max_packets);

    EnqueueResult enqueue(Packet pkt);
    std::optional<Packet> dequeue();

    const Packet* front() const { return q_.empty() ? nullptr : &q_.front(); }
    int occupancy() const { return static_cast<int>(q_.size()); }
    int capacity() const { return cap_; }
    bool empty() const { return q_.empty(); }

    // Largest layer index currently buffered, 0 when empty.
    int max_layer_buffered() const;

    // Read-only view for audits.
    const std::deque<Packet>& contents() const { return q_; }

private:
    std::deque<Packet> q_;
    int cap_;
};

}  // namespace lvsim

#endif
