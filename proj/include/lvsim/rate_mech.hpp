#ifndef LVSIM_RATE_MECH_HPP
#define LVSIM_RATE_MECH_HPP

#include <optional>
#include <vector>

#include "lvsim/packet.hpp"
#include "lvsim/sim_time.hpp"

namespace lvsim {

// Explicit-rate marking state of one output port. Measurements accumulate
// over an averaging interval; overload, fair share and the capacity figures
// are recomputed only at interval boundaries.
class EricaPort {
public:
    EricaPort(double link_capacity_bps, double target_utilization, double min_rate_bps);

    // Measurement accumulation, called as traffic arrives at the port.
    void count_video_arrival(int conn, int bits);

    // Interval boundary: guaranteed_bits is the interfering traffic that
    // arrived at the port during the interval.
    void end_interval(double guaranteed_bits, double interval_sec);

    // Marks a forward feedback packet passing through this port.
    // current_rate_bps is the packet's R_C field.
    double mark(double incoming_explicit_rate_bps, double current_rate_bps) const;

    double abr_capacity_bps() const { return abr_capacity_; }
    double overload() const { return overload_; }
    double fair_share_bps() const { return fair_share_; }

private:
    double capacity_;
    double utilization_;
    double min_rate_;

    // Cached once per interval.
    double abr_capacity_;
    double overload_ = 0;
    double fair_share_;

    // Interval accumulators.
    double abr_bits_ = 0;
    std::vector<int> active_conns_;
};

// Pools backward-feedback rate arrays, folds near-equal rates, and prunes to
// the layer budget by repeatedly removing the entry whose removal keeps the
// combined goodput G = sum(r_i * c_i) highest. The lowest-rate entry is never
// removed.
struct MergeOutcome {
    std::vector<RateEntry> entries;
    // Candidate goodputs evaluated at each removal step (for tracing).
    // step_candidates[s][k] is G after removing candidate k+1 of step s.
    std::vector<std::vector<double>> step_candidates;
};

// Sorts by rate and folds entries closer than fold_epsilon (keeping the
// lesser rate, summing counters).
std::vector<RateEntry> fold_entries(std::vector<RateEntry> pooled, double fold_epsilon);

MergeOutcome merge_entries(std::vector<RateEntry> pooled, int max_layers,
                           double fold_epsilon);

// Per (junction node, connection) merge bookkeeping: the latest backward
// feedback per downstream branch for the current cycle.
class MergeBuffer {
public:
    MergeBuffer(int branches, int max_layers, double fold_epsilon);

    void deposit(int branch, BwdFeedback fb);  // freshest per branch wins
    bool all_heard() const;
    bool any_heard() const;

    // Merges the branches heard this cycle and starts a new cycle.
    // Returns nothing if no branch reported.
    std::optional<BwdFeedback> emit();

private:
    int max_layers_;
    double fold_epsilon_;
    std::vector<std::optional<BwdFeedback>> latest_;
    std::vector<bool> heard_;
};

// A destination reflects a forward feedback packet as a single-entry
// backward feedback packet.
BwdFeedback reflect_at_destination(const FwdFeedback& fb);

}  // namespace lvsim

#endif
