#include <doctest.h>

#include <algorithm>
#include <vector>

#include "lvsim/event_queue.hpp"
#include "lvsim/link.hpp"
#include "lvsim/rng.hpp"

using namespace lvsim;

TEST_CASE("event at time zero dispatches first") {
    EventQueue ev;
    std::vector<int> order;
    ev.schedule(5, [&] { order.push_back(2); });
    ev.schedule(0, [&] { order.push_back(1); });
    ev.run_until(10);
    CHECK(order == std::vector<int>{1, 2});
    CHECK(ev.now() == 10);
}

TEST_CASE("ties dispatch in insertion order") {
    EventQueue ev;
    std::vector<int> order;
    for (int i = 0; i < 8; ++i) ev.schedule(100, [&, i] { order.push_back(i); });
    ev.run_until(100);
    for (int i = 0; i < 8; ++i) CHECK(order[i] == i);
}

TEST_CASE("dispatch order equals sort-by-(time, insertion) oracle") {
    // One million random events against a stable-sort oracle.
    const int n = 1'000'000;
    Rng rng(1234);
    std::vector<SimTime> times(n);
    for (int i = 0; i < n; ++i)
        times[i] = static_cast<SimTime>(rng.next_u64() % 1'000'000);

    EventQueue ev;
    std::vector<int> dispatched;
    dispatched.reserve(n);
    for (int i = 0; i < n; ++i) ev.schedule(times[i], [&, i] { dispatched.push_back(i); });

    std::vector<int> oracle(n);
    for (int i = 0; i < n; ++i) oracle[i] = i;
    std::stable_sort(oracle.begin(), oracle.end(),
                     [&](int a, int b) { return times[a] < times[b]; });

    ev.run_until(1'000'000);
    REQUIRE(dispatched.size() == static_cast<std::size_t>(n));
    CHECK(dispatched == oracle);
}

TEST_CASE("events scheduled during dispatch run at their time") {
    EventQueue ev;
    std::vector<int> order;
    ev.schedule(10, [&] {
        order.push_back(1);
        ev.schedule(10, [&] { order.push_back(2); });  // same tick, later insertion
        ev.schedule(20, [&] { order.push_back(4); });
    });
    ev.schedule(15, [&] { order.push_back(3); });
    ev.run_until(30);
    CHECK(order == std::vector<int>{1, 2, 3, 4});
}

TEST_CASE("link serialization and arrival arithmetic") {
    // 424-bit packet at 100 Mbps: 4.24 us of serialization.
    CHECK(serialization_time(100e6, 424) == 4240);
    // Plus 5 us of propagation: arrival 9.24 us after departure.
    CHECK(transmit_arrival(100e6, 5000, 0, 424) == 9240);
    // Zero propagation delay: serialization only.
    CHECK(transmit_arrival(100e6, 0, 1000, 424) == 1000 + 4240);
    // Arrival is strictly after departure.
    CHECK(transmit_arrival(100e6, 0, 0, 1) > 0);
}

TEST_CASE("back-to-back packets are one serialization time apart") {
    const SimTime ser = serialization_time(100e6, 424);
    SimTime depart1 = 1000;
    SimTime arrival1 = transmit_arrival(100e6, 5000, depart1, 424);
    SimTime depart2 = depart1 + ser;  // link busy until then
    SimTime arrival2 = transmit_arrival(100e6, 5000, depart2, 424);
    CHECK(arrival2 - arrival1 == ser);
}
