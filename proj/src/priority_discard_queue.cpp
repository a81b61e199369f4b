#include "lvsim/priority_discard_queue.hpp"

#include <cassert>

namespace lvsim {

PriorityDiscardQueue::PriorityDiscardQueue(int max_packets) : cap_(max_packets) {
    assert(cap_ > 0);
}

int PriorityDiscardQueue::max_layer_buffered() const {
    int m = 0;
    for (const Packet& p : q_)
        if (p.layer > m) m = p.layer;
    return m;
}

PriorityDiscardQueue::EnqueueResult PriorityDiscardQueue::enqueue(Packet pkt) {
    // Feedback travels on the control path; only video is ever buffered here.
    assert(pkt.kind == PacketKind::Video);

    if (occupancy() < cap_) {
        q_.push_back(std::move(pkt));
        return {EnqueueOutcome::Accepted, std::nullopt};
    }

    const int buffered_max = max_layer_buffered();
    if (pkt.layer >= buffered_max) {
        // The incoming packet is (one of) the lowest priority; drop it.
        return {EnqueueOutcome::DroppedIncoming, std::nullopt};
    }

    // Drop the most recently enqueued packet of the lowest priority layer.
    for (auto it = q_.rbegin(); it != q_.rend(); ++it) {
        if (it->layer == buffered_max) {
            Packet victim = std::move(*it);
            q_.erase(std::next(it).base());
            q_.push_back(std::move(pkt));
            assert(occupancy() == cap_);
            // Loss isolation: the victim is never higher priority than
            // anything retained.
            assert(victim.layer >= max_layer_buffered());
            return {EnqueueOutcome::DroppedOther, std::move(victim)};
        }
    }
    assert(false && "buffered_max not found");
    return {EnqueueOutcome::DroppedIncoming, std::nullopt};
}

std::optional<Packet> PriorityDiscardQueue::dequeue() {
    if (q_.empty()) return std::nullopt;
    Packet p = std::move(q_.front());
    q_.pop_front();
    return p;
}

}  // namespace lvsim
