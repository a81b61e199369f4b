#include "lvsim/layered_video.hpp"

#include <cassert>
#include <cmath>

namespace lvsim {

bool LayerSet::valid() const {
    if (cumulative.empty() || count() > max_layers) return false;
    double prev = 0;
    for (double r : cumulative) {
        if (r <= prev) return false;
        prev = r;
    }
    return true;
}

VideoSource::VideoSource(EventQueue* ev, int conn, int max_layers,
                         double initial_rate_bps, Sink sink)
    : ev_(ev), conn_(conn), sink_(std::move(sink)) {
    layers_.max_layers = max_layers;
    layers_.cumulative = {initial_rate_bps};
    slots_.resize(max_layers);
}

SimTime VideoSource::gap_ns(double rate_bps) {
    double g = static_cast<double>(kCellBits) * 1e9 / rate_bps;
    return std::max<SimTime>(1, static_cast<SimTime>(std::llround(g)));
}

void VideoSource::start() {
    assert(!started_);
    started_ = true;
    for (int layer = 1; layer <= layers_.count(); ++layer) schedule(layer, ev_->now());
}

void VideoSource::schedule(int layer, SimTime at) {
    Slot& s = slots_[layer - 1];
    assert(!s.scheduled);
    s.scheduled = true;
    ev_->schedule(at, [this, layer] { fire(layer); });
}

void VideoSource::fire(int layer) {
    slots_[layer - 1].scheduled = false;
    if (layer > layers_.count()) return;  // layer deleted; slot goes dormant
    double rate = layers_.layer_rate(layer);
    if (rate <= 0) return;

    Packet pkt;
    pkt.kind = PacketKind::Video;
    pkt.conn = conn_;
    pkt.layer = layer;
    pkt.seq = slots_[layer - 1].next_seq++;
    pkt.size_bits = kCellBits;
    ++emitted_;
    sink_(std::move(pkt));

    schedule(layer, ev_->now() + gap_ns(rate));
}

void VideoSource::set_layers(std::vector<double> cumulative) {
    assert(!cumulative.empty());
    assert(static_cast<int>(cumulative.size()) <= layers_.max_layers);
    layers_.cumulative = std::move(cumulative);
    assert(layers_.valid());
    if (!started_) return;
    // Wake any slot that was dormant; already-scheduled slots keep their
    // pending emission and pick up the new gap afterwards.
    for (int layer = 1; layer <= layers_.count(); ++layer) {
        Slot& s = slots_[layer - 1];
        if (!s.scheduled && layers_.layer_rate(layer) > 0)
            schedule(layer, ev_->now() + gap_ns(layers_.layer_rate(layer)));
    }
}

ReceptionMonitor::ReceptionMonitor(SimTime interval, int max_layers,
                                   double partial_threshold)
    : interval_(interval), partial_threshold_(partial_threshold) {
    windows_.resize(max_layers);
}

void ReceptionMonitor::on_packet(int layer, std::int64_t seq, SimTime now) {
    assert(layer >= 1 && layer <= static_cast<int>(windows_.size()));
    windows_[layer - 1].pkts.emplace_back(now, seq);
}

void ReceptionMonitor::evict(SimTime now) {
    SimTime cutoff = now - interval_;
    for (LayerWindow& w : windows_)
        while (!w.pkts.empty() && w.pkts.front().first <= cutoff) w.pkts.pop_front();
}

bool ReceptionMonitor::fully_received(const LayerWindow& w) const {
    if (w.pkts.empty()) return false;
    // Packets arrive in seq order (FIFO network), so the window is gap-free
    // exactly when its size matches the seq span.
    std::int64_t span = w.pkts.back().second - w.pkts.front().second + 1;
    return static_cast<std::int64_t>(w.pkts.size()) == span;
}

bool ReceptionMonitor::partially_received(const LayerWindow& w) const {
    if (w.pkts.empty()) return false;
    std::int64_t span = w.pkts.back().second - w.pkts.front().second + 1;
    double fraction = static_cast<double>(w.pkts.size()) / static_cast<double>(span);
    return fraction > partial_threshold_;
}

ReceptionMonitor::Classification ReceptionMonitor::classify(SimTime now) {
    evict(now);
    Classification c;
    int n = static_cast<int>(windows_.size());
    while (c.fully_up_to < n && fully_received(windows_[c.fully_up_to]))
        ++c.fully_up_to;
    int next = c.fully_up_to + 1;
    if (next <= n && !fully_received(windows_[next - 1]) &&
        partially_received(windows_[next - 1]))
        c.partial_layer = next;
    return c;
}

double ReceptionMonitor::goodput_bps(SimTime now) {
    Classification c = classify(now);
    std::int64_t bits = 0;
    for (int layer = 1; layer <= c.fully_up_to; ++layer)
        bits += static_cast<std::int64_t>(windows_[layer - 1].pkts.size()) * kCellBits;
    return static_cast<double>(bits) / to_seconds(interval_);
}

}  // namespace lvsim
