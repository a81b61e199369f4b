#ifndef LVSIM_SCENARIO_HPP
#define LVSIM_SCENARIO_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lvsim/sim_time.hpp"
#include "lvsim/traffic.hpp"

namespace lvsim {

enum class NodeRole { Source, Intermediate, Destination };
enum class MechanismKind { RateBased, CreditBased };

struct NodeSpec {
    std::string id;
    NodeRole role = NodeRole::Intermediate;
};

struct LinkSpec {
    std::string id;
    std::string from;
    std::string to;
    double capacity_bps = 100e6;
    SimTime prop_delay = 0;
};

struct TrafficBinding {
    std::string link;
    InterferenceSpec spec;
};

struct RouteSpec {
    std::string dest;
    std::vector<std::string> via;  // intermediate nodes, source->dest order
};

struct ConnectionSpec {
    std::string id;
    std::string source;
    std::vector<RouteSpec> routes;
    double peak_rate_bps = 0;  // 0: defaults to the mechanism peak rate
};

struct MechanismParams {
    MechanismKind kind = MechanismKind::RateBased;
    int max_layers = 2;             // L
    double initial_rate_bps = 150e3;
    int node_buffer_packets = -1;   // -1: default by kind (200 rate / 300 credit)

    // Rate-based.
    int fwd_fb_spacing = 15;        // N_f
    double target_utilization = 0.99;
    SimTime erica_interval = msec(10);
    SimTime merge_timeout = msec(50);
    double peak_rate_bps = 100e6;
    double min_rate_bps = 150e3;
    double fold_epsilon_bps = 100e3;

    // Credit-based.
    int nt = 8;
    int dt = 8;
    double rate_step_bps = 16.0 * 424;
    SimTime reception_interval = msec(10);
    SimTime accumulation_interval = msec(40);
    int src_buffer_size = 600;
    int src_lower = 20;
    int src_middle = 200;
    int src_upper = 300;
    bool enable_condition2 = true;

    int resolved_node_buffer() const {
        if (node_buffer_packets > 0) return node_buffer_packets;
        return kind == MechanismKind::RateBased ? 200 : 300;
    }
};

struct Scenario {
    std::string name = "scenario";
    SimTime duration = seconds(10);
    std::uint64_t seed = 1;
    std::vector<NodeSpec> nodes;
    std::vector<LinkSpec> links;
    std::vector<ConnectionSpec> connections;
    std::vector<TrafficBinding> traffic;
    MechanismParams mech;
};

class ScenarioError : public std::runtime_error {
public:
    ScenarioError(int line, const std::string& msg)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg
                                      : msg),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_ = 0;
};

// Parses the line-oriented scenario format (see docs/scenario-format.md).
// The result is fully defaulted and validated; unknown keys are rejected.
Scenario parse_scenario(const std::string& text);

// Canonical form; parse(serialize(s)) round-trips.
std::string serialize_scenario(const Scenario& s);

// Semantic checks (tree shape, threshold ordering, dangling ids, ...).
// Throws ScenarioError on violation.
void validate_scenario(const Scenario& s);

// Applies a `key=value` override to a scenario ([mechanism] keys plus
// duration/seed/name). Throws ScenarioError for unknown keys or bad values.
void apply_override(Scenario& s, const std::string& key, const std::string& value);

// Parses a "<number><unit>" time with unit ns/us/ms/s.
SimTime parse_time_text(const std::string& text);

// ---- Builders for the experimental topologies ----

// Tree with one source, a junction, and two destinations; interference on
// the two inter-node links. experiment 1: 90 Mbps constant + 90/95 square
// wave. experiment 2: 98 Mbps constant + 90/95 square wave. experiment 0:
// no interference.
Scenario build_responsiveness_topology(int experiment = 1);

// Binary tree with eight destinations; Poisson interference at 90 Mbps on
// inter-node links and loads 0.90..0.97 on destination links.
Scenario build_scalability_topology(int max_layers = 4,
                                    SimTime inter_node_delay = usec(50));

// Parking lot with three sources sharing a common bottleneck toward one
// destination; Poisson load 0.90 on each bottleneck link.
Scenario build_fairness_topology(SimTime inter_node_delay = usec(5));

}  // namespace lvsim

#endif
