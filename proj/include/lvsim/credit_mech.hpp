#ifndef LVSIM_CREDIT_MECH_HPP
#define LVSIM_CREDIT_MECH_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "lvsim/packet.hpp"
#include "lvsim/sim_time.hpp"

namespace lvsim {

struct CreditRuleConfig {
    int max_layers = 2;       // L
    double step_bps = 16.0 * kCellBits;  // one rate adjustment
    int credits_per_fb = 8;   // N_t
    // Source buffer thresholds, in packets.
    int lower = 20;
    int middle = 200;
    int upper = 300;
};

// First rule set: steers the lowest-priority layer's cumulative rate from the
// source buffer occupancy. prev_fb_time < 0 means no previous feedback.
void apply_rule_set_1(std::vector<double>& cumulative, const CreditRuleConfig& cfg,
                      int occupancy, int occupancy_at_prev_fb, SimTime now,
                      SimTime prev_fb_time);

// Second rule set: adjusts the rates of the remaining (non-lowest) layers
// from a feedback packet's reception arrays.
void apply_rule_set_2(std::vector<double>& cumulative, const CreditRuleConfig& cfg,
                      const std::vector<int>& full, const std::vector<int>& partial);

// Third rule set: creates/deletes layers from interval-accumulated reception
// arrays. At most one deletion (scanned first) and one creation per call.
struct RuleSet3Result {
    std::optional<int> deleted_layer;
    std::optional<int> created_layer;
};
RuleSet3Result apply_rule_set_3(std::vector<double>& cumulative,
                                const CreditRuleConfig& cfg,
                                const std::vector<std::int64_t>& acc_full,
                                const std::vector<std::int64_t>& acc_partial);

// Feedback-generation conditions of an intermediate node, evaluated after
// every video packet transmission on any of the connection's output ports.
bool feedback_conditions_met(const std::vector<int>& transmitted_since_fb,
                             const std::vector<int>& queue_occupancies, int nt,
                             int dt, bool enable_condition2);

// Elementwise sums of the latest feedback arrays per downstream branch.
std::pair<std::vector<int>, std::vector<int>> aggregate_reception(
    const std::vector<std::optional<CreditFeedback>>& branch_latest, int max_layers);

}  // namespace lvsim

#endif
