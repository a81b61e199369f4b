#include <doctest.h>

#include <cmath>

#include "lvsim/traffic.hpp"

using namespace lvsim;

TEST_CASE("constant interference occupies its nominal rate") {
    InterferenceSpec spec;
    spec.kind = TrafficKind::Constant;
    spec.rate_bps = 90e6;
    InterferenceSource src(spec, 1);
    CHECK(src.occupied_bandwidth(0, seconds(1)) == doctest::Approx(90e6));
    CHECK(src.occupied_bandwidth(msec(3), msec(17)) == doctest::Approx(90e6));
}

TEST_CASE("square wave over one full period averages the two levels") {
    InterferenceSpec spec;
    spec.kind = TrafficKind::SquareWave;
    spec.rate_bps = 90e6;
    spec.high_bps = 95e6;
    spec.half_period = seconds(2);
    InterferenceSource src(spec, 1);
    CHECK(src.occupied_bandwidth(0, seconds(4)) == doctest::Approx(92.5e6));
    // Within a single level the rate is that level's.
    CHECK(src.occupied_bandwidth(0, seconds(2)) == doctest::Approx(90e6));
    CHECK(src.occupied_bandwidth(seconds(2), seconds(4)) == doctest::Approx(95e6));
}

TEST_CASE("square wave transitions land exactly on half-period multiples") {
    InterferenceSpec spec;
    spec.kind = TrafficKind::SquareWave;
    spec.rate_bps = 90e6;
    spec.high_bps = 95e6;
    spec.half_period = seconds(2);
    InterferenceSource src(spec, 1);
    src.generate_to(seconds(5));
    // One packet arrives exactly at each phase boundary.
    bool at_2s = false, at_4s = false;
    std::int64_t count_low = 0, count_high = 0;
    while (!src.pending_empty()) {
        SimTime a = src.pending_front();
        src.pop_pending();
        if (a == seconds(2)) at_2s = true;
        if (a == seconds(4)) at_4s = true;
        if (a < seconds(2)) ++count_low;
        else if (a < seconds(4)) ++count_high;
    }
    CHECK(at_2s);
    CHECK(at_4s);
    // Packetized counts match the nominal rates to within one packet.
    CHECK(std::abs(count_low * kCellBits - 90e6 * 2) <= 2 * kCellBits);
    CHECK(std::abs(count_high * kCellBits - 95e6 * 2) <= 2 * kCellBits);
}

TEST_CASE("poisson realized rate stays within counting-process bounds") {
    // sigma of the windowed rate estimate: rate / sqrt(lambda * T).
    const double rate = 90e6;
    const double T = 10.0;
    const double lambda = rate / kCellBits;
    const double sigma = rate / std::sqrt(lambda * T);
    int within_3sigma = 0;
    for (int seed = 0; seed < 100; ++seed) {
        InterferenceSpec spec;
        spec.kind = TrafficKind::Poisson;
        spec.rate_bps = rate;
        InterferenceSource src(spec, stream_seed(7, seed));
        double realized = src.occupied_bandwidth(0, seconds(10));
        REQUIRE(std::abs(realized - rate) < 4.5 * sigma);
        if (std::abs(realized - rate) < 3 * sigma) ++within_3sigma;
    }
    CHECK(within_3sigma >= 95);
}

TEST_CASE("poisson streams are reproducible and independent") {
    InterferenceSpec spec;
    spec.kind = TrafficKind::Poisson;
    spec.rate_bps = 90e6;

    InterferenceSource a1(spec, stream_seed(42, 0));
    InterferenceSource a2(spec, stream_seed(42, 0));
    InterferenceSource b(spec, stream_seed(42, 1));

    a1.generate_to(msec(50));
    a2.generate_to(msec(50));
    b.generate_to(msec(50));

    bool identical = true, differs = false;
    while (!a1.pending_empty() && !a2.pending_empty()) {
        if (a1.pending_front() != a2.pending_front()) identical = false;
        if (!b.pending_empty()) {
            if (a1.pending_front() != b.pending_front()) differs = true;
            b.pop_pending();
        }
        a1.pop_pending();
        a2.pop_pending();
    }
    CHECK(identical);
    CHECK(differs);
}
