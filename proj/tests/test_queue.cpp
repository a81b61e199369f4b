#include <doctest.h>

#include <algorithm>
#include <vector>

#include "lvsim/priority_discard_queue.hpp"
#include "lvsim/rng.hpp"

using namespace lvsim;

namespace {

Packet video(int layer, std::int64_t seq) {
    Packet p;
    p.kind = PacketKind::Video;
    p.layer = layer;
    p.seq = seq;
    return p;
}

}  // namespace

TEST_CASE("incoming lowest-priority packet is dropped on overflow") {
    PriorityDiscardQueue q(3);
    for (int i = 0; i < 3; ++i) CHECK(q.enqueue(video(1, i)).outcome ==
                                      PriorityDiscardQueue::EnqueueOutcome::Accepted);
    auto res = q.enqueue(video(2, 100));
    CHECK(res.outcome == PriorityDiscardQueue::EnqueueOutcome::DroppedIncoming);
    CHECK(q.occupancy() == 3);
}

TEST_CASE("buffered lowest-priority packet is evicted for a base-layer arrival") {
    PriorityDiscardQueue q(3);
    q.enqueue(video(1, 0));
    q.enqueue(video(3, 0));
    q.enqueue(video(1, 1));
    auto res = q.enqueue(video(1, 2));
    REQUIRE(res.outcome == PriorityDiscardQueue::EnqueueOutcome::DroppedOther);
    CHECK(res.victim->layer == 3);
    CHECK(q.occupancy() == 3);
    CHECK(q.max_layer_buffered() == 1);
}

TEST_CASE("eviction picks the most recently enqueued among the lowest layer") {
    PriorityDiscardQueue q(2);
    q.enqueue(video(2, 0));
    q.enqueue(video(2, 1));
    auto res = q.enqueue(video(1, 0));
    REQUIRE(res.outcome == PriorityDiscardQueue::EnqueueOutcome::DroppedOther);
    CHECK(res.victim->layer == 2);
    CHECK(res.victim->seq == 1);  // the younger layer-2 packet
    // FIFO among retained packets.
    CHECK(q.dequeue()->seq == 0);
    CHECK(q.dequeue()->layer == 1);
}

TEST_CASE("dequeue order is FIFO among retained packets") {
    PriorityDiscardQueue q(4);
    for (int i = 0; i < 4; ++i) q.enqueue(video(1 + (i % 2), i));
    for (int i = 0; i < 4; ++i) {
        auto p = q.dequeue();
        REQUIRE(p.has_value());
        CHECK(p->seq == i);
    }
    CHECK(!q.dequeue().has_value());
}

TEST_CASE("survivors equal the (layer, arrival) prefix oracle on random traces") {
    Rng rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const int cap = 1 + static_cast<int>(rng.next_u64() % 8);
        const int n = 5 + static_cast<int>(rng.next_u64() % 60);
        PriorityDiscardQueue q(cap);
        std::vector<std::pair<int, int>> offered;  // (layer, arrival index)
        for (int i = 0; i < n; ++i) {
            int layer = 1 + static_cast<int>(rng.next_u64() % 4);
            offered.emplace_back(layer, i);
            q.enqueue(video(layer, i));

            // Oracle: sort everything offered so far by (layer asc, arrival
            // asc) and keep the prefix that fits.
            auto sorted = offered;
            std::sort(sorted.begin(), sorted.end());
            if (static_cast<int>(sorted.size()) > cap) sorted.resize(cap);

            std::vector<std::pair<int, int>> held;
            for (const Packet& p : q.contents())
                held.emplace_back(p.layer, static_cast<int>(p.seq));
            std::sort(held.begin(), held.end());
            REQUIRE(held == sorted);
        }
    }
}
