#include "lvsim/simulation.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <deque>
#include <map>
#include <memory>
#include <utility>

#include "lvsim/credit_mech.hpp"
#include "lvsim/event_queue.hpp"
#include "lvsim/layered_video.hpp"
#include "lvsim/link.hpp"
#include "lvsim/packet.hpp"
#include "lvsim/priority_discard_queue.hpp"
#include "lvsim/rate_mech.hpp"
#include "lvsim/rng.hpp"
#include "lvsim/traffic.hpp"

namespace lvsim {

namespace {

class Sim {
public:
    Sim(const Scenario& s, const SimOptions& opt) : scn_(s), opt_(opt) { build(); }

    RunResult run();

private:
    // ---- structures ----
    struct ConnQueue {
        int conn = -1;
        PriorityDiscardQueue q;
        std::int64_t credit_balance = 0;
        std::int64_t bits_txed = 0;  // cumulative video bits through the port
        std::int64_t bits_txed_mark = 0;
        std::int64_t last_credit_counter = -1;  // C monotonicity check
        explicit ConnQueue(int conn_, int cap) : conn(conn_), q(cap) {}
    };

    struct Port {
        int index = -1;
        int link = -1;
        bool forward = true;
        int from_node = -1;
        int to_node = -1;
        double capacity_bps = 0;
        SimTime prop = 0;
        SimTime ser_cell = 0;
        std::deque<Packet> control;
        std::vector<ConnQueue> queues;
        std::vector<int> conn_to_queue;  // conn index -> queues index or -1
        int rr_next = 0;
        InterferenceSource* intf = nullptr;
        SimTime busy_until = 0;
        bool completion_pending = false;
        SimTime completion_for = 0;
        std::unique_ptr<EricaPort> erica;
        double guaranteed_cum_mark = 0;
        double available_bps_last_window = 0;

        SimTime ser_time(int bits) const { return serialization_time(capacity_bps, bits); }
    };

    struct NodeConn {
        bool on_tree = false;
        std::vector<int> down_ports;  // forward ports, deterministic order
        int up_port = -1;             // reverse port toward parent
        // Credit-based state.
        std::vector<int> tx_since_fb;
        std::vector<std::optional<CreditFeedback>> branch_latest;
        std::int64_t credits_sent_total = 0;
        // Rate-based junction state.
        std::unique_ptr<MergeBuffer> merge;
        std::uint64_t merge_timer_gen = 0;
    };

    struct SourceState {
        int conn = -1;
        int node = -1;
        std::unique_ptr<VideoSource> video;
        double peak_rate_bps = 0;
        std::int64_t pace_count = 0;  // N_f forward-feedback pacing
        // Credit-based rule state.
        SimTime prev_fb_time = -1;
        int occ_at_prev_fb = 0;
        std::vector<std::int64_t> acc_full, acc_partial;
    };

    struct DestState {
        int conn = -1;
        int node = -1;
        std::string name;
        std::unique_ptr<ReceptionMonitor> monitor;
        std::int64_t received_count = 0;
        std::int64_t credits_sent_total = 0;
        std::vector<int> path_ports;  // forward ports source -> dest
        double goodput_sum = 0;
        std::int64_t goodput_samples = 0;
        double available_sum = 0;
        std::int64_t available_samples = 0;
    };

    // ---- construction ----
    void build();
    int node_index(const std::string& id) const;
    int link_index(const std::string& id) const;

    // ---- port service ----
    void kick(Port& p) { try_serve(p); }
    void try_serve(Port& p);
    void advance_interference(Port& p, SimTime now);
    void schedule_completion(Port& p);
    void deliver(Port& p, Packet&& pkt);

    // ---- traffic entry ----
    void enqueue_video(Port& p, Packet pkt);
    void send_control(Port& p, Packet pkt);

    // ---- arrivals ----
    void on_arrival(int port_index, Packet&& pkt);
    void on_video_at_dest(DestState& d, const Packet& pkt);
    void on_fwd_fb(int node, Packet&& pkt);
    void on_bwd_fb(int node, int from_port, Packet&& pkt);
    void on_credit_fb(int node, int from_port, Packet&& pkt);

    // ---- mechanism actions ----
    void on_source_emit(int conn, Packet&& pkt);
    void emit_fwd_fb(SourceState& src);
    void apply_layers(int conn, std::vector<double> cumulative);
    void emit_merged(int conn, int node);
    void arm_merge_timer(int conn, int node);
    void on_merge_timeout(int conn, int node, std::uint64_t gen);
    void on_video_transmitted(Port& p, int conn);
    void emit_node_credit_fb(int conn, int node);
    void emit_dest_credit_fb(DestState& d);
    void source_apply_credit_fb(SourceState& src, const CreditFeedback& fb);

    // ---- periodic machinery ----
    void erica_tick();
    void accumulation_tick();
    void layer_sample_tick();
    void goodput_sample_tick();
    void available_tick();
    void record_layers(int conn);
    bool audit_conservation();

    bool credit_mode() const { return scn_.mech.kind == MechanismKind::CreditBased; }

    // ---- data ----
    Scenario scn_;
    SimOptions opt_;
    EventQueue ev_;

    std::vector<std::unique_ptr<InterferenceSource>> intf_owned_;
    std::vector<Port> ports_;  // 2 per link: forward 2*l, reverse 2*l+1
    std::vector<std::vector<NodeConn>> conn_node_;  // [conn][node]
    std::vector<SourceState> sources_;              // per conn
    std::vector<DestState> dests_;
    std::vector<std::vector<int>> dest_index_;  // [conn][node] -> dests_ idx or -1

    int n_nodes_ = 0, n_conns_ = 0;
    int node_buffer_ = 0;

    // Conservation accounting, indexed [conn][layer-1].
    std::vector<std::vector<std::int64_t>> generated_, delivered_, dropped_, inflight_;

    std::vector<std::vector<LayerSample>> layer_samples_;
    std::int64_t video_transmissions_ = 0;
    std::int64_t drops_audited_ = 0;

    int bottleneck_port_ = -1;
    bool steady_marked_ = false;
    std::vector<double> avail_marks_;  // per port, interference bits at window start
};

int Sim::node_index(const std::string& id) const {
    for (int i = 0; i < static_cast<int>(scn_.nodes.size()); ++i)
        if (scn_.nodes[i].id == id) return i;
    throw ScenarioError(0, "unknown node '" + id + "'");
}

int Sim::link_index(const std::string& id) const {
    for (int i = 0; i < static_cast<int>(scn_.links.size()); ++i)
        if (scn_.links[i].id == id) return i;
    throw ScenarioError(0, "unknown link '" + id + "'");
}

void Sim::build() {
    validate_scenario(scn_);
    const MechanismParams& m = scn_.mech;
    n_nodes_ = static_cast<int>(scn_.nodes.size());
    n_conns_ = static_cast<int>(scn_.connections.size());
    node_buffer_ = m.resolved_node_buffer();

    // Ports, two directions per link.
    ports_.resize(2 * scn_.links.size());
    for (int l = 0; l < static_cast<int>(scn_.links.size()); ++l) {
        const LinkSpec& spec = scn_.links[l];
        for (int dir = 0; dir < 2; ++dir) {
            Port& p = ports_[2 * l + dir];
            p.index = 2 * l + dir;
            p.link = l;
            p.forward = dir == 0;
            p.from_node = node_index(dir == 0 ? spec.from : spec.to);
            p.to_node = node_index(dir == 0 ? spec.to : spec.from);
            p.capacity_bps = spec.capacity_bps;
            p.prop = spec.prop_delay;
            p.ser_cell = p.ser_time(kCellBits);
            p.conn_to_queue.assign(n_conns_, -1);
        }
    }

    // Interference, forward direction only. Streams are keyed by link index
    // so both mechanisms see identical realizations for a given seed.
    for (const TrafficBinding& b : scn_.traffic) {
        int l = link_index(b.link);
        auto src = std::make_unique<InterferenceSource>(
            b.spec, stream_seed(scn_.seed, static_cast<std::uint64_t>(l)));
        ports_[2 * l].intf = src.get();
        intf_owned_.push_back(std::move(src));
    }

    // Compile the multicast trees.
    conn_node_.assign(n_conns_, std::vector<NodeConn>(n_nodes_));
    dest_index_.assign(n_conns_, std::vector<int>(n_nodes_, -1));
    layer_samples_.resize(n_conns_);

    std::map<std::pair<int, int>, int> fwd_port_by_hop;  // (from,to) -> port
    for (int l = 0; l < static_cast<int>(scn_.links.size()); ++l)
        fwd_port_by_hop[{ports_[2 * l].from_node, ports_[2 * l].to_node}] = 2 * l;

    for (int c = 0; c < n_conns_; ++c) {
        const ConnectionSpec& conn = scn_.connections[c];
        int src_node = node_index(conn.source);
        for (const RouteSpec& r : conn.routes) {
            std::vector<int> path;
            path.push_back(src_node);
            for (const std::string& v : r.via) path.push_back(node_index(v));
            int dest_node = node_index(r.dest);
            path.push_back(dest_node);

            DestState d;
            d.conn = c;
            d.node = dest_node;
            d.name = r.dest;
            d.monitor = std::make_unique<ReceptionMonitor>(m.reception_interval,
                                                           m.max_layers);

            for (std::size_t i = 0; i + 1 < path.size(); ++i) {
                int fp = fwd_port_by_hop.at({path[i], path[i + 1]});
                d.path_ports.push_back(fp);
                NodeConn& at_from = conn_node_[c][path[i]];
                at_from.on_tree = true;
                if (std::find(at_from.down_ports.begin(), at_from.down_ports.end(),
                              fp) == at_from.down_ports.end())
                    at_from.down_ports.push_back(fp);
                NodeConn& at_to = conn_node_[c][path[i + 1]];
                at_to.on_tree = true;
                at_to.up_port = fp + 1;  // reverse direction of the same link
            }
            dest_index_[c][dest_node] = static_cast<int>(dests_.size());
            dests_.push_back(std::move(d));
        }

        // Per-connection queues on every forward port of the tree, created in
        // connection order so round-robin order is deterministic.
        for (int n = 0; n < n_nodes_; ++n) {
            NodeConn& nc = conn_node_[c][n];
            for (int fp : nc.down_ports) {
                Port& p = ports_[fp];
                int cap = node_buffer_;
                if (n == src_node && credit_mode()) cap = m.src_buffer_size;
                p.conn_to_queue[c] = static_cast<int>(p.queues.size());
                p.queues.emplace_back(c, cap);
                p.queues.back().credit_balance = node_buffer_;
            }
            nc.tx_since_fb.assign(nc.down_ports.size(), 0);
            nc.branch_latest.assign(nc.down_ports.size(), std::nullopt);
            if (m.kind == MechanismKind::RateBased && n != src_node &&
                nc.down_ports.size() >= 2) {
                nc.merge = std::make_unique<MergeBuffer>(
                    static_cast<int>(nc.down_ports.size()), m.max_layers,
                    m.fold_epsilon_bps);
            }
        }

        if (credit_mode() && conn_node_[c][src_node].down_ports.size() != 1)
            throw ScenarioError(0, "connection " + conn.id +
                                       ": credit-based sources need a single first hop");

        SourceState src;
        src.conn = c;
        src.node = src_node;
        src.peak_rate_bps = conn.peak_rate_bps > 0 ? conn.peak_rate_bps : m.peak_rate_bps;
        src.acc_full.assign(m.max_layers, 0);
        src.acc_partial.assign(m.max_layers, 0);
        src.video = std::make_unique<VideoSource>(
            &ev_, c, m.max_layers, m.initial_rate_bps,
            [this, c](Packet&& pkt) { on_source_emit(c, std::move(pkt)); });
        sources_.push_back(std::move(src));
    }

    // ERICA state on every forward port that carries video.
    if (m.kind == MechanismKind::RateBased) {
        for (Port& p : ports_) {
            if (p.forward && !p.queues.empty())
                p.erica = std::make_unique<EricaPort>(p.capacity_bps,
                                                      m.target_utilization,
                                                      m.min_rate_bps);
        }
    }

    // Fairness bottleneck: the last declared link whose forward port carries
    // every connection, unless named explicitly.
    if (n_conns_ >= 2) {
        if (!opt_.bottleneck_link.empty()) {
            bottleneck_port_ = 2 * link_index(opt_.bottleneck_link);
        } else {
            for (int l = 0; l < static_cast<int>(scn_.links.size()); ++l)
                if (static_cast<int>(ports_[2 * l].queues.size()) == n_conns_)
                    bottleneck_port_ = 2 * l;
        }
    }

    int layers = m.max_layers;
    generated_.assign(n_conns_, std::vector<std::int64_t>(layers, 0));
    delivered_.assign(n_conns_, std::vector<std::int64_t>(layers, 0));
    dropped_.assign(n_conns_, std::vector<std::int64_t>(layers, 0));
    inflight_.assign(n_conns_, std::vector<std::int64_t>(layers, 0));
}

// ---- port service ----

void Sim::advance_interference(Port& p, SimTime now) {
    p.intf->generate_to(now);
    while (!p.intf->pending_empty()) {
        SimTime a = p.intf->pending_front();
        if (a > now) break;
        if (a >= p.busy_until) {
            // The server was idle when this packet arrived: it was served on
            // the spot.
            p.intf->pop_pending();
            p.busy_until = a + p.ser_cell;
        } else {
            break;  // waits behind the current transmission
        }
    }
}

void Sim::schedule_completion(Port& p) {
    if (p.completion_pending && p.completion_for == p.busy_until) return;
    p.completion_pending = true;
    p.completion_for = p.busy_until;
    int pi = p.index;
    ev_.schedule(p.busy_until, [this, pi] {
        Port& port = ports_[pi];
        if (port.completion_for == ev_.now()) port.completion_pending = false;
        try_serve(port);
    });
}

void Sim::try_serve(Port& p) {
    const SimTime now = ev_.now();
    if (p.intf) advance_interference(p, now);
    if (p.busy_until > now) {
        schedule_completion(p);
        return;
    }

    // Guaranteed traffic first: drain the backlog that arrived during the
    // previous transmission (and anything arriving while it drains).
    if (p.intf) {
        p.intf->generate_to(now);
        if (!p.intf->pending_empty() && p.intf->pending_front() <= now) {
            SimTime t = now;
            while (true) {
                p.intf->generate_to(t);
                if (p.intf->pending_empty() || p.intf->pending_front() > t) break;
                p.intf->pop_pending();
                t += p.ser_cell;
            }
            p.busy_until = t;
            schedule_completion(p);
            return;
        }
    }

    if (!p.control.empty()) {
        Packet pkt = std::move(p.control.front());
        p.control.pop_front();
        p.busy_until = now + p.ser_time(pkt.size_bits);
        deliver(p, std::move(pkt));
        schedule_completion(p);
        return;
    }

    const int nq = static_cast<int>(p.queues.size());
    for (int k = 0; k < nq; ++k) {
        ConnQueue& cq = p.queues[(p.rr_next + k) % nq];
        if (cq.q.empty()) continue;
        if (credit_mode() && cq.credit_balance <= 0) continue;
        Packet pkt = *cq.q.dequeue();
        p.rr_next = (p.rr_next + k + 1) % nq;
        if (credit_mode()) --cq.credit_balance;
        cq.bits_txed += pkt.size_bits;
        ++video_transmissions_;
        const int conn = pkt.conn;
        p.busy_until = now + p.ser_time(pkt.size_bits);
        deliver(p, std::move(pkt));
        if (credit_mode()) on_video_transmitted(p, conn);
        schedule_completion(p);
        return;
    }
}

void Sim::deliver(Port& p, Packet&& pkt) {
    SimTime arrive = p.busy_until + p.prop;
    if (pkt.is_video()) ++inflight_[pkt.conn][pkt.layer - 1];
    int pi = p.index;
    ev_.schedule(arrive, [this, pi, pk = std::move(pkt)]() mutable {
        on_arrival(pi, std::move(pk));
    });
}

// ---- traffic entry ----

void Sim::enqueue_video(Port& p, Packet pkt) {
    if (p.erica) p.erica->count_video_arrival(pkt.conn, pkt.size_bits);
    ConnQueue& cq = p.queues[p.conn_to_queue[pkt.conn]];
    const int conn = pkt.conn;
    const int incoming_layer = pkt.layer;
    auto res = cq.q.enqueue(std::move(pkt));
    switch (res.outcome) {
        case PriorityDiscardQueue::EnqueueOutcome::Accepted:
            break;
        case PriorityDiscardQueue::EnqueueOutcome::DroppedIncoming:
            ++dropped_[conn][incoming_layer - 1];
            ++drops_audited_;
            break;
        case PriorityDiscardQueue::EnqueueOutcome::DroppedOther:
            ++dropped_[conn][res.victim->layer - 1];
            ++drops_audited_;
            break;
    }
    kick(p);
}

void Sim::send_control(Port& p, Packet pkt) {
    if (pkt.kind == PacketKind::RateFwdFb && p.erica) {
        auto& fb = std::get<FwdFeedback>(pkt.payload);
        double marked = p.erica->mark(fb.explicit_rate_bps, fb.current_rate_bps);
        assert(marked <= fb.explicit_rate_bps + 1e-9);
        fb.explicit_rate_bps = marked;
    }
    p.control.push_back(std::move(pkt));
    kick(p);
}

// ---- arrivals ----

void Sim::on_arrival(int port_index, Packet&& pkt) {
    Port& p = ports_[port_index];
    const int node = p.to_node;
    switch (pkt.kind) {
        case PacketKind::Video: {
            --inflight_[pkt.conn][pkt.layer - 1];
            int di = dest_index_[pkt.conn][node];
            if (di >= 0) {
                ++delivered_[pkt.conn][pkt.layer - 1];
                on_video_at_dest(dests_[di], pkt);
            } else {
                const NodeConn& nc = conn_node_[pkt.conn][node];
                for (std::size_t i = 0; i < nc.down_ports.size(); ++i) {
                    Port& out = ports_[nc.down_ports[i]];
                    if (i + 1 == nc.down_ports.size())
                        enqueue_video(out, std::move(pkt));
                    else
                        enqueue_video(out, pkt);
                }
            }
            break;
        }
        case PacketKind::RateFwdFb:
            on_fwd_fb(node, std::move(pkt));
            break;
        case PacketKind::RateBwdFb:
            on_bwd_fb(node, port_index, std::move(pkt));
            break;
        case PacketKind::CreditFb:
            on_credit_fb(node, port_index, std::move(pkt));
            break;
        case PacketKind::Interference:
            assert(false && "interference is not routed");
            break;
    }
}

void Sim::on_video_at_dest(DestState& d, const Packet& pkt) {
    d.monitor->on_packet(pkt.layer, pkt.seq, ev_.now());
    if (credit_mode()) {
        if (++d.received_count % scn_.mech.nt == 0) emit_dest_credit_fb(d);
    }
}

void Sim::on_fwd_fb(int node, Packet&& pkt) {
    const int conn = pkt.conn;
    int di = dest_index_[conn][node];
    if (di >= 0) {
        const auto& fwd = std::get<FwdFeedback>(pkt.payload);
        Packet back;
        back.kind = PacketKind::RateBwdFb;
        back.conn = conn;
        back.payload = reflect_at_destination(fwd);
        send_control(ports_[conn_node_[conn][node].up_port], std::move(back));
        return;
    }
    const NodeConn& nc = conn_node_[conn][node];
    for (std::size_t i = 0; i < nc.down_ports.size(); ++i) {
        if (i + 1 == nc.down_ports.size())
            send_control(ports_[nc.down_ports[i]], std::move(pkt));
        else
            send_control(ports_[nc.down_ports[i]], pkt);
    }
}

void Sim::on_bwd_fb(int node, int from_port, Packet&& pkt) {
    const int conn = pkt.conn;
    if (node == sources_[conn].node) {
        const auto& fb = std::get<BwdFeedback>(pkt.payload);
        std::vector<double> cumulative;
        cumulative.reserve(fb.entries.size());
        for (const RateEntry& e : fb.entries) cumulative.push_back(e.rate_bps);
        apply_layers(conn, std::move(cumulative));
        return;
    }
    NodeConn& nc = conn_node_[conn][node];
    if (nc.merge) {
        // The reverse port's forward twin identifies the branch.
        assert(!ports_[from_port].forward);
        int fwd_twin = from_port - 1;
        auto it = std::find(nc.down_ports.begin(), nc.down_ports.end(), fwd_twin);
        assert(it != nc.down_ports.end());
        int branch = static_cast<int>(it - nc.down_ports.begin());
        nc.merge->deposit(branch, std::move(std::get<BwdFeedback>(pkt.payload)));
        if (nc.merge->all_heard()) emit_merged(conn, node);
    } else {
        send_control(ports_[nc.up_port], std::move(pkt));
    }
}

void Sim::on_credit_fb(int node, int from_port, Packet&& pkt) {
    const int conn = pkt.conn;
    auto& fb = std::get<CreditFeedback>(pkt.payload);
    assert(!ports_[from_port].forward);
    int fwd_twin = from_port - 1;
    Port& fp = ports_[fwd_twin];
    ConnQueue& cq = fp.queues[fp.conn_to_queue[conn]];
    // The C counter is strictly increasing on a link.
    assert(fb.credits_total > cq.last_credit_counter);
    cq.last_credit_counter = fb.credits_total;
    cq.credit_balance += scn_.mech.nt;

    if (node == sources_[conn].node) {
        source_apply_credit_fb(sources_[conn], fb);
    } else {
        NodeConn& nc = conn_node_[conn][node];
        auto it = std::find(nc.down_ports.begin(), nc.down_ports.end(), fwd_twin);
        assert(it != nc.down_ports.end());
        nc.branch_latest[it - nc.down_ports.begin()] = std::move(fb);
    }
    kick(fp);
}

// ---- mechanism actions ----

void Sim::on_source_emit(int conn, Packet&& pkt) {
    ++generated_[conn][pkt.layer - 1];
    SourceState& src = sources_[conn];
    const NodeConn& nc = conn_node_[conn][src.node];
    for (std::size_t i = 0; i < nc.down_ports.size(); ++i) {
        Port& out = ports_[nc.down_ports[i]];
        if (i + 1 == nc.down_ports.size())
            enqueue_video(out, std::move(pkt));
        else
            enqueue_video(out, pkt);
    }
    if (!credit_mode()) {
        if (++src.pace_count >= scn_.mech.fwd_fb_spacing) {
            src.pace_count = 0;
            emit_fwd_fb(src);
        }
    }
}

void Sim::emit_fwd_fb(SourceState& src) {
    FwdFeedback fb;
    fb.max_layers = scn_.mech.max_layers;
    fb.current_rate_bps = src.video->layers().combined_rate();
    fb.explicit_rate_bps = src.peak_rate_bps;
    const NodeConn& nc = conn_node_[src.conn][src.node];
    for (std::size_t i = 0; i < nc.down_ports.size(); ++i) {
        Packet pkt;
        pkt.kind = PacketKind::RateFwdFb;
        pkt.conn = src.conn;
        pkt.payload = fb;
        send_control(ports_[nc.down_ports[i]], std::move(pkt));
    }
}

void Sim::apply_layers(int conn, std::vector<double> cumulative) {
    const auto& current = sources_[conn].video->layers().cumulative;
    if (cumulative == current) return;
    sources_[conn].video->set_layers(std::move(cumulative));
    record_layers(conn);
}

void Sim::emit_merged(int conn, int node) {
    NodeConn& nc = conn_node_[conn][node];
    auto merged = nc.merge->emit();
    arm_merge_timer(conn, node);
    if (!merged) return;
    Packet pkt;
    pkt.kind = PacketKind::RateBwdFb;
    pkt.conn = conn;
    pkt.payload = std::move(*merged);
    send_control(ports_[nc.up_port], std::move(pkt));
}

void Sim::arm_merge_timer(int conn, int node) {
    NodeConn& nc = conn_node_[conn][node];
    std::uint64_t gen = ++nc.merge_timer_gen;
    ev_.schedule(ev_.now() + scn_.mech.merge_timeout,
                 [this, conn, node, gen] { on_merge_timeout(conn, node, gen); });
}

void Sim::on_merge_timeout(int conn, int node, std::uint64_t gen) {
    NodeConn& nc = conn_node_[conn][node];
    if (gen != nc.merge_timer_gen) return;  // superseded
    if (nc.merge->any_heard())
        emit_merged(conn, node);  // re-arms
    else
        arm_merge_timer(conn, node);
}

void Sim::on_video_transmitted(Port& p, int conn) {
    const int node = p.from_node;
    if (node == sources_[conn].node) return;  // the root has no upstream loop
    NodeConn& nc = conn_node_[conn][node];
    auto it = std::find(nc.down_ports.begin(), nc.down_ports.end(), p.index);
    assert(it != nc.down_ports.end());
    ++nc.tx_since_fb[it - nc.down_ports.begin()];

    std::vector<int> occ;
    occ.reserve(nc.down_ports.size());
    for (int dp : nc.down_ports) {
        Port& q = ports_[dp];
        occ.push_back(q.queues[q.conn_to_queue[conn]].q.occupancy());
    }
    if (feedback_conditions_met(nc.tx_since_fb, occ, scn_.mech.nt, scn_.mech.dt,
                                scn_.mech.enable_condition2))
        emit_node_credit_fb(conn, node);
}

void Sim::emit_node_credit_fb(int conn, int node) {
    NodeConn& nc = conn_node_[conn][node];
    auto [full, partial] = aggregate_reception(nc.branch_latest, scn_.mech.max_layers);
    nc.credits_sent_total += scn_.mech.nt;
    CreditFeedback fb;
    fb.max_layers = scn_.mech.max_layers;
    fb.credits_total = nc.credits_sent_total;
    fb.full = std::move(full);
    fb.partial = std::move(partial);
    std::fill(nc.tx_since_fb.begin(), nc.tx_since_fb.end(), 0);
    Packet pkt;
    pkt.kind = PacketKind::CreditFb;
    pkt.conn = conn;
    pkt.payload = std::move(fb);
    send_control(ports_[nc.up_port], std::move(pkt));
}

void Sim::emit_dest_credit_fb(DestState& d) {
    auto cls = d.monitor->classify(ev_.now());
    CreditFeedback fb;
    fb.max_layers = scn_.mech.max_layers;
    fb.full.assign(scn_.mech.max_layers, 0);
    fb.partial.assign(scn_.mech.max_layers, 0);
    if (cls.partial_layer > 0)
        fb.partial[cls.partial_layer - 1] = 1;
    else if (cls.fully_up_to >= 1)
        fb.full[cls.fully_up_to - 1] = 1;
    d.credits_sent_total += scn_.mech.nt;
    fb.credits_total = d.credits_sent_total;
    Packet pkt;
    pkt.kind = PacketKind::CreditFb;
    pkt.conn = d.conn;
    pkt.payload = std::move(fb);
    send_control(ports_[conn_node_[d.conn][d.node].up_port], std::move(pkt));
}

void Sim::source_apply_credit_fb(SourceState& src, const CreditFeedback& fb) {
    const SimTime now = ev_.now();
    const NodeConn& nc = conn_node_[src.conn][src.node];
    Port& first = ports_[nc.down_ports[0]];
    int occ = first.queues[first.conn_to_queue[src.conn]].q.occupancy();

    CreditRuleConfig cfg;
    cfg.max_layers = scn_.mech.max_layers;
    cfg.step_bps = scn_.mech.rate_step_bps;
    cfg.credits_per_fb = scn_.mech.nt;
    cfg.lower = scn_.mech.src_lower;
    cfg.middle = scn_.mech.src_middle;
    cfg.upper = scn_.mech.src_upper;

    std::vector<double> cumulative = src.video->layers().cumulative;
    apply_rule_set_1(cumulative, cfg, occ, src.occ_at_prev_fb, now, src.prev_fb_time);
    apply_rule_set_2(cumulative, cfg, fb.full, fb.partial);
    apply_layers(src.conn, std::move(cumulative));

    for (int i = 0; i < scn_.mech.max_layers; ++i) {
        src.acc_full[i] += fb.full[i];
        src.acc_partial[i] += fb.partial[i];
    }
    src.prev_fb_time = now;
    src.occ_at_prev_fb = occ;
}

// ---- periodic machinery ----

void Sim::erica_tick() {
    const double interval_sec = to_seconds(scn_.mech.erica_interval);
    for (Port& p : ports_) {
        if (!p.erica) continue;
        double cum = p.intf ? p.intf->cumulative_bits(ev_.now()) : 0.0;
        p.erica->end_interval(cum - p.guaranteed_cum_mark, interval_sec);
        p.guaranteed_cum_mark = cum;
    }
    ev_.schedule(ev_.now() + scn_.mech.erica_interval, [this] { erica_tick(); });
}

void Sim::accumulation_tick() {
    CreditRuleConfig cfg;
    cfg.max_layers = scn_.mech.max_layers;
    cfg.step_bps = scn_.mech.rate_step_bps;
    cfg.credits_per_fb = scn_.mech.nt;
    cfg.lower = scn_.mech.src_lower;
    cfg.middle = scn_.mech.src_middle;
    cfg.upper = scn_.mech.src_upper;
    for (SourceState& src : sources_) {
        std::vector<double> cumulative = src.video->layers().cumulative;
        apply_rule_set_3(cumulative, cfg, src.acc_full, src.acc_partial);
        apply_layers(src.conn, std::move(cumulative));
        std::fill(src.acc_full.begin(), src.acc_full.end(), 0);
        std::fill(src.acc_partial.begin(), src.acc_partial.end(), 0);
    }
    ev_.schedule(ev_.now() + scn_.mech.accumulation_interval,
                 [this] { accumulation_tick(); });
}

void Sim::record_layers(int conn) {
    layer_samples_[conn].push_back(
        LayerSample{ev_.now(), sources_[conn].video->layers().cumulative});
}

void Sim::layer_sample_tick() {
    for (int c = 0; c < n_conns_; ++c) record_layers(c);
    ev_.schedule(ev_.now() + opt_.layer_sample_period, [this] { layer_sample_tick(); });
}

void Sim::goodput_sample_tick() {
    const SimTime now = ev_.now();
    if (now >= scn_.mech.reception_interval) {
        for (DestState& d : dests_) {
            double g = d.monitor->goodput_bps(now);
            if (now > opt_.steady_start) {
                d.goodput_sum += g;
                ++d.goodput_samples;
            }
        }
    }
    ev_.schedule(now + opt_.goodput_sample_period, [this] { goodput_sample_tick(); });
}

void Sim::available_tick() {
    const SimTime now = ev_.now();
    const double window_sec = to_seconds(opt_.available_window);
    if (!steady_marked_) {
        // First tick at steady_start just marks the counters.
        steady_marked_ = true;
        avail_marks_.assign(ports_.size(), 0.0);
        for (std::size_t i = 0; i < ports_.size(); ++i) {
            Port& p = ports_[i];
            if (!p.forward) continue;
            if (p.intf) avail_marks_[i] = p.intf->cumulative_bits(now);
            for (ConnQueue& cq : p.queues) cq.bits_txed_mark = cq.bits_txed;
        }
    } else {
        for (std::size_t i = 0; i < ports_.size(); ++i) {
            Port& p = ports_[i];
            if (!p.forward) continue;
            if (p.intf) {
                double cum = p.intf->cumulative_bits(now);
                double occupied = (cum - avail_marks_[i]) / window_sec;
                avail_marks_[i] = cum;
                p.available_bps_last_window = p.capacity_bps - occupied;
            } else {
                p.available_bps_last_window = p.capacity_bps;
            }
        }
        for (DestState& d : dests_) {
            double avail = 1e18;
            for (int fp : d.path_ports)
                avail = std::min(avail, ports_[fp].available_bps_last_window);
            d.available_sum += avail;
            ++d.available_samples;
        }
    }
    ev_.schedule(now + opt_.available_window, [this] { available_tick(); });
}

bool Sim::audit_conservation() {
    std::vector<std::vector<std::int64_t>> queued(
        n_conns_, std::vector<std::int64_t>(scn_.mech.max_layers, 0));
    for (Port& p : ports_) {
        if (!p.forward) continue;
        for (ConnQueue& cq : p.queues)
            for (const Packet& pkt : cq.q.contents()) ++queued[pkt.conn][pkt.layer - 1];
    }
    for (int c = 0; c < n_conns_; ++c) {
        for (int l = 0; l < scn_.mech.max_layers; ++l) {
            std::int64_t lhs = generated_[c][l];
            std::int64_t rhs =
                delivered_[c][l] + dropped_[c][l] + queued[c][l] + inflight_[c][l];
            if (lhs != rhs) return false;
        }
    }
    return true;
}

RunResult Sim::run() {
    for (SourceState& src : sources_) src.video->start();
    for (int c = 0; c < n_conns_; ++c) record_layers(c);
    for (int c = 0; c < n_conns_; ++c) {
        for (int n = 0; n < n_nodes_; ++n) {
            if (conn_node_[c][n].merge) arm_merge_timer(c, n);
        }
    }
    if (scn_.mech.kind == MechanismKind::RateBased)
        ev_.schedule(scn_.mech.erica_interval, [this] { erica_tick(); });
    else
        ev_.schedule(scn_.mech.accumulation_interval, [this] { accumulation_tick(); });
    ev_.schedule(opt_.layer_sample_period, [this] { layer_sample_tick(); });
    ev_.schedule(opt_.goodput_sample_period, [this] { goodput_sample_tick(); });
    ev_.schedule(opt_.steady_start, [this] { available_tick(); });

    ev_.run_until(scn_.duration);

    RunResult r;
    r.scenario_name = scn_.name;
    r.mechanism = scn_.mech.kind;
    r.seed = scn_.seed;
    for (const ConnectionSpec& c : scn_.connections) r.conn_ids.push_back(c.id);
    r.layers = std::move(layer_samples_);

    std::vector<DestGoodput> per_dest;
    for (DestState& d : dests_) {
        DestGoodput g;
        g.dest = d.name;
        g.mean_goodput_bps =
            d.goodput_samples > 0 ? d.goodput_sum / d.goodput_samples : 0;
        g.mean_available_bps =
            d.available_samples > 0 ? d.available_sum / d.available_samples : 0;
        g.ratio = g.mean_available_bps > 0 ? g.mean_goodput_bps / g.mean_available_bps
                                           : -1;
        per_dest.push_back(std::move(g));
    }
    r.goodput = make_goodput_report(std::move(per_dest));

    if (bottleneck_port_ >= 0) {
        FairnessReport f;
        Port& bp = ports_[bottleneck_port_];
        double window_sec = to_seconds(scn_.duration - opt_.steady_start);
        for (int c = 0; c < n_conns_; ++c) {
            int qi = bp.conn_to_queue[c];
            if (qi < 0) continue;
            f.sources.push_back(scn_.connections[c].source);
            f.rates_bps.push_back(
                static_cast<double>(bp.queues[qi].bits_txed - bp.queues[qi].bits_txed_mark) /
                window_sec);
        }
        f.sigma_bps = population_sigma(f.rates_bps);
        r.fairness = std::move(f);
    }

    for (int c = 0; c < n_conns_; ++c) {
        for (int l = 0; l < scn_.mech.max_layers; ++l) {
            r.video_generated += generated_[c][l];
            r.video_delivered += delivered_[c][l];
            r.video_dropped += dropped_[c][l];
        }
    }
    r.video_transmissions = video_transmissions_;
    r.drops_audited = drops_audited_;
    r.events_dispatched = ev_.dispatched();
    r.conservation_ok = audit_conservation();
    return r;
}

}  // namespace

RunResult run_simulation(const Scenario& s, const SimOptions& opt) {
    Sim sim(s, opt);
    return sim.run();
}

}  // namespace lvsim
