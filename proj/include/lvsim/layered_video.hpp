#ifndef LVSIM_LAYERED_VIDEO_HPP
#define LVSIM_LAYERED_VIDEO_HPP

#include <cstdint>
#include <deque>
#include <functional>
#include <utility>
#include <vector>

#include "lvsim/event_queue.hpp"
#include "lvsim/packet.hpp"
#include "lvsim/sim_time.hpp"

namespace lvsim {

// The source's layering state: strictly increasing cumulative rates
// r_1 < ... < r_N, N <= L. Layer i's own rate is r_i - r_{i-1}.
struct LayerSet {
    std::vector<double> cumulative;
    int max_layers = 1;

    int count() const { return static_cast<int>(cumulative.size()); }
    double combined_rate() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
    double layer_rate(int layer) const {
        double below = layer > 1 ? cumulative[layer - 2] : 0.0;
        return cumulative[layer - 1] - below;
    }
    bool valid() const;
};

// Ideal rate-controlled packet generator over a LayerSet. Each layer emits
// cell-sized packets on its own deadline schedule; per-layer sequence numbers
// are strictly increasing and survive layer deactivation.
class VideoSource {
public:
    using Sink = std::function<void(Packet&&)>;

    VideoSource(EventQueue* ev, int conn, int max_layers, double initial_rate_bps,
                Sink sink);

    void start();  // begins emission at the initial single-layer state

    const LayerSet& layers() const { return layers_; }

    // Applies a new cumulative rate vector. Pending per-layer emissions are
    // not rescheduled, so a rate change never causes a packet burst.
    void set_layers(std::vector<double> cumulative);

    std::int64_t packets_emitted() const { return emitted_; }

private:
    void fire(int layer);
    void schedule(int layer, SimTime at);
    static SimTime gap_ns(double rate_bps);

    EventQueue* ev_;
    int conn_;
    Sink sink_;
    LayerSet layers_;

    struct Slot {
        bool scheduled = false;
        std::int64_t next_seq = 0;
    };
    std::vector<Slot> slots_;  // index 0 = layer 1
    std::int64_t emitted_ = 0;
    bool started_ = false;
};

// Destination-side reception bookkeeping over a sliding monitoring interval.
// Expected packet counts are derived from the observed per-layer sequence
// number span within the window.
class ReceptionMonitor {
public:
    struct Classification {
        int fully_up_to = 0;   // f: largest i with layers 1..i fully received
        int partial_layer = 0; // f+1 when that layer is partially received, else 0
    };

    ReceptionMonitor(SimTime interval, int max_layers, double partial_threshold = 0.25);

    void on_packet(int layer, std::int64_t seq, SimTime now);

    Classification classify(SimTime now);

    // Combined received rate of the fully received layer prefix (bits/s).
    double goodput_bps(SimTime now);

    SimTime interval() const { return interval_; }

private:
    struct LayerWindow {
        std::deque<std::pair<SimTime, std::int64_t>> pkts;  // (arrival, seq)
    };
    void evict(SimTime now);
    bool fully_received(const LayerWindow& w) const;
    bool partially_received(const LayerWindow& w) const;

    SimTime interval_;
    double partial_threshold_;
    std::vector<LayerWindow> windows_;
};

}  // namespace lvsim

#endif
