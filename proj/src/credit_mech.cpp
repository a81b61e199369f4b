#include "lvsim/credit_mech.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace lvsim {

namespace {

// Lowest admissible cumulative rate for layer `layer` (1-based), keeping a
// gap of at least one step below it.
double floor_for(const std::vector<double>& cumulative, int layer, double step) {
    return layer > 1 ? cumulative[layer - 2] + step : step;
}

void increment_layer(std::vector<double>& cumulative, int layer, double step) {
    // Stay at least one step below the layer above.
    double ceiling = layer < static_cast<int>(cumulative.size())
                         ? cumulative[layer] - step
                         : cumulative[layer - 1] + step;
    cumulative[layer - 1] = std::min(cumulative[layer - 1] + step, ceiling);
}

void decrement_layer(std::vector<double>& cumulative, int layer, double step) {
    cumulative[layer - 1] =
        std::max(cumulative[layer - 1] - step, floor_for(cumulative, layer, step));
}

}  // namespace

void apply_rule_set_1(std::vector<double>& cumulative, const CreditRuleConfig& cfg,
                      int occupancy, int occupancy_at_prev_fb, SimTime now,
                      SimTime prev_fb_time) {
    assert(!cumulative.empty());
    const int n = static_cast<int>(cumulative.size());
    const double step = cfg.step_bps;
    const double lowest = floor_for(cumulative, n, step);

    if (occupancy < cfg.lower) {
        cumulative[n - 1] += step;
    } else if (occupancy > cfg.upper) {
        // Estimate the first hop's drain rate since the previous feedback.
        if (prev_fb_time >= 0 && now > prev_fb_time) {
            double drain_bps = static_cast<double>(cfg.credits_per_fb) * kCellBits /
                               to_seconds(now - prev_fb_time);
            if (drain_bps < cumulative[n - 1])
                cumulative[n - 1] = std::max(drain_bps, lowest);
            else
                decrement_layer(cumulative, n, step);
        } else {
            decrement_layer(cumulative, n, step);
        }
    } else if (occupancy > cfg.middle) {
        decrement_layer(cumulative, n, step);
    } else if (occupancy >= cfg.lower) {
        if (occupancy > occupancy_at_prev_fb)
            decrement_layer(cumulative, n, step);
        else
            cumulative[n - 1] += step;
    }
}

void apply_rule_set_2(std::vector<double>& cumulative, const CreditRuleConfig& cfg,
                      const std::vector<int>& full, const std::vector<int>& partial) {
    const int n = static_cast<int>(cumulative.size());
    const int destinations =
        std::accumulate(full.begin(), full.end(), 0) +
        std::accumulate(partial.begin(), partial.end(), 0);
    if (destinations == 0) return;
    const int td = destinations / cfg.max_layers;
    if (td == 0) return;

    auto f = [&](int i) { return i >= 1 ? full[i - 1] : 0; };
    auto p = [&](int i) { return partial[i - 1]; };

    // The lowest-priority layer's rate belongs to the first rule set, so
    // decrements here stop at layer n-1.
    for (int i = 1; i <= n; ++i) {
        if (i >= 2 && p(i) >= td && f(i - 1) < td)
            increment_layer(cumulative, i - 1, cfg.step_bps);
        else if (i < n && p(i) >= td && f(i) < td)
            decrement_layer(cumulative, i, cfg.step_bps);
    }
}

RuleSet3Result apply_rule_set_3(std::vector<double>& cumulative,
                                const CreditRuleConfig& cfg,
                                const std::vector<std::int64_t>& acc_full,
                                const std::vector<std::int64_t>& acc_partial) {
    RuleSet3Result result;
    const std::int64_t destinations =
        std::accumulate(acc_full.begin(), acc_full.end(), std::int64_t{0}) +
        std::accumulate(acc_partial.begin(), acc_partial.end(), std::int64_t{0});
    if (destinations == 0) return result;
    const std::int64_t td = destinations / cfg.max_layers;

    auto f = [&](int i) { return i >= 1 ? acc_full[i - 1] : std::int64_t{0}; };
    auto p = [&](int i) {
        return i <= static_cast<int>(acc_partial.size()) ? acc_partial[i - 1]
                                                         : std::int64_t{0};
    };

    // Deletion scan: layer i serves nobody when nothing is received at or
    // just above it. The lowest-priority layer itself is governed by the
    // first rule set and is never deleted.
    int n = static_cast<int>(cumulative.size());
    for (int i = 1; i < n; ++i) {
        if (p(i) + f(i) + p(i + 1) == 0) {
            cumulative.erase(cumulative.begin() + (i - 1));
            result.deleted_layer = i;
            n = static_cast<int>(cumulative.size());
            break;
        }
    }

    // Creation scan. For i = 1 the layer-below condition is vacuous: the
    // base itself may be split when enough destinations only partially
    // receive it while others receive it fully.
    if (n < cfg.max_layers && td >= 1) {
        for (int i = 1; i <= n; ++i) {
            bool below_ok = (i == 1) || f(i - 1) >= td;
            if (below_ok && p(i) >= td && f(i) >= td) {
                double lo = i >= 2 ? cumulative[i - 2] : 0.0;
                double hi = cumulative[i - 1];
                if (hi - lo < 2 * cfg.step_bps) continue;  // no room
                // Insert just below the existing rate; the second rule set
                // then walks the new layer down to what its destinations can
                // actually sustain.
                cumulative.insert(cumulative.begin() + (i - 1), hi - cfg.step_bps);
                result.created_layer = i;
                break;
            }
        }
    }
    return result;
}

bool feedback_conditions_met(const std::vector<int>& transmitted_since_fb,
                             const std::vector<int>& queue_occupancies, int nt,
                             int dt, bool enable_condition2) {
    assert(!transmitted_since_fb.empty());
    auto [min_tx, max_tx] =
        std::minmax_element(transmitted_since_fb.begin(), transmitted_since_fb.end());
    if (*min_tx >= nt) return true;  // every port has drained
    if (!enable_condition2) return false;
    if (*max_tx < nt) return false;
    auto [min_occ, max_occ] =
        std::minmax_element(queue_occupancies.begin(), queue_occupancies.end());
    return (*max_occ - *min_occ) >= dt;
}

std::pair<std::vector<int>, std::vector<int>> aggregate_reception(
    const std::vector<std::optional<CreditFeedback>>& branch_latest, int max_layers) {
    std::vector<int> full(max_layers, 0);
    std::vector<int> partial(max_layers, 0);
    for (const auto& fb : branch_latest) {
        if (!fb) continue;
        for (int i = 0; i < max_layers; ++i) {
            full[i] += fb->full[i];
            partial[i] += fb->partial[i];
        }
    }
    return {std::move(full), std::move(partial)};
}

}  // namespace lvsim
