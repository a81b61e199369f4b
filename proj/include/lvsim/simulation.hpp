#ifndef LVSIM_SIMULATION_HPP
#define LVSIM_SIMULATION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lvsim/metrics.hpp"
#include "lvsim/scenario.hpp"
#include "lvsim/sim_time.hpp"

namespace lvsim {

// One observation of a connection's layering state.
struct LayerSample {
    SimTime t;
    std::vector<double> cumulative;
};

struct RunResult {
    std::string scenario_name;
    MechanismKind mechanism;
    std::uint64_t seed = 0;

    // Per connection: layer-rate trajectory (periodic samples plus every
    // change instant), ordered by time.
    std::vector<std::string> conn_ids;
    std::vector<std::vector<LayerSample>> layers;

    GoodputRatioReport goodput;              // over the steady-state window
    std::optional<FairnessReport> fairness;  // when >= 2 connections

    std::int64_t video_generated = 0;
    std::int64_t video_delivered = 0;
    std::int64_t video_dropped = 0;
    std::int64_t video_transmissions = 0;  // across all ports
    std::int64_t drops_audited = 0;        // drops checked for loss isolation
    std::uint64_t events_dispatched = 0;
    bool conservation_ok = false;
};

struct SimOptions {
    SimTime steady_start = seconds(2);          // transient excluded from metrics
    SimTime layer_sample_period = msec(5);
    SimTime goodput_sample_period = msec(10);
    SimTime available_window = seconds(1);
    std::string bottleneck_link;  // fairness; empty = last link shared by all conns
};

// Runs one scenario to completion. Deterministic: identical scenario and
// seed produce identical results.
RunResult run_simulation(const Scenario& s, const SimOptions& opt = {});

}  // namespace lvsim

#endif
