#include "lvsim/rate_mech.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace lvsim {

namespace {
constexpr double kOverloadFloor = 1e-3;
}

EricaPort::EricaPort(double link_capacity_bps, double target_utilization,
                     double min_rate_bps)
    : capacity_(link_capacity_bps),
      utilization_(target_utilization),
      min_rate_(min_rate_bps),
      abr_capacity_(target_utilization * link_capacity_bps),
      fair_share_(target_utilization * link_capacity_bps) {}

void EricaPort::count_video_arrival(int conn, int bits) {
    abr_bits_ += bits;
    if (conn >= static_cast<int>(active_conns_.size()))
        active_conns_.resize(conn + 1, 0);
    active_conns_[conn] = 1;
}

void EricaPort::end_interval(double guaranteed_bits, double interval_sec) {
    assert(interval_sec > 0);
    double guaranteed_rate = guaranteed_bits / interval_sec;
    abr_capacity_ = utilization_ * capacity_ - guaranteed_rate;

    int active = 0;
    for (int a : active_conns_) active += a;
    active = std::max(1, active);

    if (abr_capacity_ > 0) {
        overload_ = (abr_bits_ / interval_sec) / abr_capacity_;
        fair_share_ = abr_capacity_ / active;
    } else {
        overload_ = 0;
        fair_share_ = 0;
    }

    abr_bits_ = 0;
    std::fill(active_conns_.begin(), active_conns_.end(), 0);
}

double EricaPort::mark(double incoming_explicit_rate_bps, double current_rate_bps) const {
    if (abr_capacity_ <= 0)
        return std::min(incoming_explicit_rate_bps, min_rate_);
    if (overload_ < kOverloadFloor) {
        // No measurable load this interval: skip the VC share.
        return std::min({incoming_explicit_rate_bps, abr_capacity_, fair_share_});
    }
    double vc_share = current_rate_bps / overload_;
    double share = std::max(vc_share, fair_share_);
    return std::min({incoming_explicit_rate_bps, abr_capacity_, share});
}

std::vector<RateEntry> fold_entries(std::vector<RateEntry> pooled, double fold_epsilon) {
    std::sort(pooled.begin(), pooled.end(),
              [](const RateEntry& a, const RateEntry& b) { return a.rate_bps < b.rate_bps; });
    std::vector<RateEntry> out;
    for (const RateEntry& e : pooled) {
        if (!out.empty() && e.rate_bps - out.back().rate_bps < fold_epsilon)
            out.back().count += e.count;  // lesser rate kept
        else
            out.push_back(e);
    }
    return out;
}

MergeOutcome merge_entries(std::vector<RateEntry> pooled, int max_layers,
                           double fold_epsilon) {
    assert(max_layers >= 1);
    MergeOutcome result;
    result.entries = fold_entries(std::move(pooled), fold_epsilon);
    auto& e = result.entries;

    while (static_cast<int>(e.size()) > max_layers) {
        double total = 0;
        for (const RateEntry& x : e) total += x.rate_bps * x.count;

        // Candidate k (k >= 1): remove e[k], folding its counter into e[k-1].
        // The first entry is never removable.
        std::vector<double> candidates(e.size() - 1);
        int best = 1;
        for (std::size_t k = 1; k < e.size(); ++k) {
            double g = total - e[k].count * (e[k].rate_bps - e[k - 1].rate_bps);
            candidates[k - 1] = g;
            // Ties remove the higher-rate entry, i.e. the later candidate.
            if (g >= candidates[best - 1]) best = static_cast<int>(k);
        }
        result.step_candidates.push_back(std::move(candidates));
        e[best - 1].count += e[best].count;
        e.erase(e.begin() + best);
    }
    return result;
}

MergeBuffer::MergeBuffer(int branches, int max_layers, double fold_epsilon)
    : max_layers_(max_layers), fold_epsilon_(fold_epsilon) {
    latest_.resize(branches);
    heard_.assign(branches, false);
}

void MergeBuffer::deposit(int branch, BwdFeedback fb) {
    latest_[branch] = std::move(fb);
    heard_[branch] = true;
}

bool MergeBuffer::all_heard() const {
    return std::all_of(heard_.begin(), heard_.end(), [](bool h) { return h; });
}

bool MergeBuffer::any_heard() const {
    return std::any_of(heard_.begin(), heard_.end(), [](bool h) { return h; });
}

std::optional<BwdFeedback> MergeBuffer::emit() {
    if (!any_heard()) return std::nullopt;
    std::vector<RateEntry> pooled;
    int layers = max_layers_;
    for (std::size_t b = 0; b < latest_.size(); ++b) {
        if (!heard_[b]) continue;
        const BwdFeedback& fb = *latest_[b];
        pooled.insert(pooled.end(), fb.entries.begin(), fb.entries.end());
        layers = fb.max_layers;  // L is carried through unchanged
    }
    std::fill(heard_.begin(), heard_.end(), false);

    BwdFeedback merged;
    merged.max_layers = layers;
    merged.entries = merge_entries(std::move(pooled), layers, fold_epsilon_).entries;
    return merged;
}

BwdFeedback reflect_at_destination(const FwdFeedback& fb) {
    BwdFeedback out;
    out.max_layers = fb.max_layers;
    out.entries = {RateEntry{fb.explicit_rate_bps, 1}};
    return out;
}

}  // namespace lvsim
