#include "lvsim/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace lvsim {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

double parse_number(const std::string& tok, int line) {
    std::size_t idx = 0;
    double v = 0;
    try {
        v = std::stod(tok, &idx);
    } catch (const std::exception&) {
        throw ScenarioError(line, "expected a number, got '" + tok + "'");
    }
    if (idx != tok.size())
        throw ScenarioError(line, "trailing characters in number '" + tok + "'");
    return v;
}

std::int64_t parse_int(const std::string& tok, int line) {
    std::size_t idx = 0;
    long long v = 0;
    try {
        v = std::stoll(tok, &idx);
    } catch (const std::exception&) {
        throw ScenarioError(line, "expected an integer, got '" + tok + "'");
    }
    if (idx != tok.size())
        throw ScenarioError(line, "trailing characters in integer '" + tok + "'");
    return v;
}

SimTime parse_time(const std::string& tok, int line) {
    static const std::pair<const char*, SimTime> units[] = {
        {"ns", 1}, {"us", kNsPerUs}, {"ms", kNsPerMs}, {"s", kNsPerSec}};
    for (const auto& [suffix, scale] : units) {
        std::size_t len = std::string(suffix).size();
        if (tok.size() > len && tok.compare(tok.size() - len, len, suffix) == 0) {
            std::string num = tok.substr(0, tok.size() - len);
            // "ms" also ends in "s"; make sure the prefix is numeric.
            if (!num.empty() && (std::isdigit(static_cast<unsigned char>(num.back())) ||
                                 num.back() == '.')) {
                double v = parse_number(num, line);
                if (v < 0) throw ScenarioError(line, "negative time '" + tok + "'");
                return static_cast<SimTime>(std::llround(v * static_cast<double>(scale)));
            }
        }
    }
    throw ScenarioError(line, "expected a time with unit ns/us/ms/s, got '" + tok + "'");
}

std::string format_time(SimTime t) {
    char buf[40];
    if (t % kNsPerSec == 0)
        std::snprintf(buf, sizeof buf, "%llds", static_cast<long long>(t / kNsPerSec));
    else if (t % kNsPerMs == 0)
        std::snprintf(buf, sizeof buf, "%lldms", static_cast<long long>(t / kNsPerMs));
    else if (t % kNsPerUs == 0)
        std::snprintf(buf, sizeof buf, "%lldus", static_cast<long long>(t / kNsPerUs));
    else
        std::snprintf(buf, sizeof buf, "%lldns", static_cast<long long>(t));
    return buf;
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

NodeRole parse_role(const std::string& tok, int line) {
    if (tok == "source") return NodeRole::Source;
    if (tok == "intermediate") return NodeRole::Intermediate;
    if (tok == "destination") return NodeRole::Destination;
    throw ScenarioError(line, "unknown node role '" + tok + "'");
}

const char* role_name(NodeRole r) {
    switch (r) {
        case NodeRole::Source: return "source";
        case NodeRole::Intermediate: return "intermediate";
        case NodeRole::Destination: return "destination";
    }
    return "?";
}

bool parse_bool(const std::string& tok, int line) {
    if (tok == "on" || tok == "true" || tok == "1") return true;
    if (tok == "off" || tok == "false" || tok == "0") return false;
    throw ScenarioError(line, "expected on/off, got '" + tok + "'");
}

// Shared by the [mechanism] section and --set overrides.
bool set_mechanism_key(MechanismParams& m, const std::string& key,
                       const std::string& val, int line) {
    if (key == "type") {
        if (val == "rate") m.kind = MechanismKind::RateBased;
        else if (val == "credit") m.kind = MechanismKind::CreditBased;
        else throw ScenarioError(line, "mechanism type must be rate or credit");
    } else if (key == "L") {
        m.max_layers = static_cast<int>(parse_int(val, line));
    } else if (key == "initial_rate") {
        m.initial_rate_bps = parse_number(val, line);
    } else if (key == "node_buffer") {
        m.node_buffer_packets = static_cast<int>(parse_int(val, line));
    } else if (key == "nf") {
        m.fwd_fb_spacing = static_cast<int>(parse_int(val, line));
    } else if (key == "target_utilization") {
        m.target_utilization = parse_number(val, line);
    } else if (key == "erica_interval") {
        m.erica_interval = parse_time(val, line);
    } else if (key == "merge_timeout") {
        m.merge_timeout = parse_time(val, line);
    } else if (key == "peak_rate") {
        m.peak_rate_bps = parse_number(val, line);
    } else if (key == "min_rate") {
        m.min_rate_bps = parse_number(val, line);
    } else if (key == "fold_epsilon") {
        m.fold_epsilon_bps = parse_number(val, line);
    } else if (key == "nt") {
        m.nt = static_cast<int>(parse_int(val, line));
    } else if (key == "dt") {
        m.dt = static_cast<int>(parse_int(val, line));
    } else if (key == "rate_step_pps") {
        m.rate_step_bps = parse_number(val, line) * 424;
    } else if (key == "reception_interval") {
        m.reception_interval = parse_time(val, line);
    } else if (key == "accumulation_interval") {
        m.accumulation_interval = parse_time(val, line);
    } else if (key == "src_buffer") {
        m.src_buffer_size = static_cast<int>(parse_int(val, line));
    } else if (key == "src_lower") {
        m.src_lower = static_cast<int>(parse_int(val, line));
    } else if (key == "src_middle") {
        m.src_middle = static_cast<int>(parse_int(val, line));
    } else if (key == "src_upper") {
        m.src_upper = static_cast<int>(parse_int(val, line));
    } else if (key == "condition2") {
        m.enable_condition2 = parse_bool(val, line);
    } else {
        return false;
    }
    return true;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    Scenario s;
    s.nodes.clear();
    s.links.clear();

    enum class Section { Top, Nodes, Links, Connection, Traffic, Mechanism };
    Section section = Section::Top;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw.substr(0, raw.find('#'));
        std::vector<std::string> tok = tokenize(line);
        if (tok.empty()) continue;

        if (tok[0].front() == '[') {
            if (tok.size() != 1)
                throw ScenarioError(line_no, "malformed section header");
            const std::string& h = tok[0];
            if (h == "[nodes]") section = Section::Nodes;
            else if (h == "[links]") section = Section::Links;
            else if (h == "[connection]") {
                section = Section::Connection;
                ConnectionSpec c;
                c.id = "c" + std::to_string(s.connections.size() + 1);
                s.connections.push_back(c);
            } else if (h == "[traffic]") section = Section::Traffic;
            else if (h == "[mechanism]") section = Section::Mechanism;
            else throw ScenarioError(line_no, "unknown section " + h);
            continue;
        }

        switch (section) {
            case Section::Top: {
                if (tok.size() != 2)
                    throw ScenarioError(line_no, "expected 'key value'");
                if (tok[0] == "name") s.name = tok[1];
                else if (tok[0] == "duration") s.duration = parse_time(tok[1], line_no);
                else if (tok[0] == "seed")
                    s.seed = static_cast<std::uint64_t>(parse_int(tok[1], line_no));
                else throw ScenarioError(line_no, "unknown key '" + tok[0] + "'");
                break;
            }
            case Section::Nodes: {
                if (tok.size() != 2)
                    throw ScenarioError(line_no, "expected '<id> <role>'");
                s.nodes.push_back({tok[0], parse_role(tok[1], line_no)});
                break;
            }
            case Section::Links: {
                if (tok.size() != 5)
                    throw ScenarioError(line_no,
                                        "expected '<id> <from> <to> <capacity_bps> <prop_delay>'");
                LinkSpec l;
                l.id = tok[0];
                l.from = tok[1];
                l.to = tok[2];
                l.capacity_bps = parse_number(tok[3], line_no);
                l.prop_delay = parse_time(tok[4], line_no);
                s.links.push_back(l);
                break;
            }
            case Section::Connection: {
                ConnectionSpec& c = s.connections.back();
                if (tok[0] == "id" && tok.size() == 2) {
                    c.id = tok[1];
                } else if (tok[0] == "source" && tok.size() == 2) {
                    c.source = tok[1];
                } else if (tok[0] == "peak_rate" && tok.size() == 2) {
                    c.peak_rate_bps = parse_number(tok[1], line_no);
                } else if (tok[0] == "route" && tok.size() >= 2) {
                    RouteSpec r;
                    r.dest = tok[1];
                    if (tok.size() >= 3) {
                        if (tok[2] != "via")
                            throw ScenarioError(line_no, "expected 'route <dest> via <nodes...>'");
                        r.via.assign(tok.begin() + 3, tok.end());
                    }
                    c.routes.push_back(std::move(r));
                } else {
                    throw ScenarioError(line_no, "unknown connection key '" + tok[0] + "'");
                }
                break;
            }
            case Section::Traffic: {
                if (tok.size() < 3)
                    throw ScenarioError(line_no, "expected '<link> <kind> <params...>'");
                TrafficBinding b;
                b.link = tok[0];
                if (tok[1] == "constant" && tok.size() == 3) {
                    b.spec.kind = TrafficKind::Constant;
                    b.spec.rate_bps = parse_number(tok[2], line_no);
                } else if (tok[1] == "squarewave" && tok.size() == 5) {
                    b.spec.kind = TrafficKind::SquareWave;
                    b.spec.rate_bps = parse_number(tok[2], line_no);
                    b.spec.high_bps = parse_number(tok[3], line_no);
                    b.spec.half_period = parse_time(tok[4], line_no);
                } else if (tok[1] == "poisson" && tok.size() == 3) {
                    b.spec.kind = TrafficKind::Poisson;
                    b.spec.rate_bps = parse_number(tok[2], line_no);
                } else {
                    throw ScenarioError(line_no, "unknown traffic form '" + tok[1] + "'");
                }
                s.traffic.push_back(std::move(b));
                break;
            }
            case Section::Mechanism: {
                if (tok.size() != 2)
                    throw ScenarioError(line_no, "expected 'key value'");
                if (!set_mechanism_key(s.mech, tok[0], tok[1], line_no))
                    throw ScenarioError(line_no, "unknown mechanism key '" + tok[0] + "'");
                break;
            }
        }
    }

    validate_scenario(s);
    return s;
}

SimTime parse_time_text(const std::string& text) { return parse_time(text, 0); }

void apply_override(Scenario& s, const std::string& key, const std::string& value) {
    if (key == "name") s.name = value;
    else if (key == "duration") s.duration = parse_time(value, 0);
    else if (key == "seed") s.seed = static_cast<std::uint64_t>(parse_int(value, 0));
    else if (!set_mechanism_key(s.mech, key, value, 0))
        throw ScenarioError(0, "unknown override key '" + key + "'");
}

std::string serialize_scenario(const Scenario& s) {
    std::ostringstream out;
    out << "name " << s.name << "\n";
    out << "duration " << format_time(s.duration) << "\n";
    out << "seed " << s.seed << "\n\n";

    out << "[nodes]\n";
    for (const NodeSpec& n : s.nodes) out << n.id << " " << role_name(n.role) << "\n";

    out << "\n[links]\n";
    for (const LinkSpec& l : s.links)
        out << l.id << " " << l.from << " " << l.to << " "
            << format_number(l.capacity_bps) << " " << format_time(l.prop_delay) << "\n";

    for (const ConnectionSpec& c : s.connections) {
        out << "\n[connection]\n";
        out << "id " << c.id << "\n";
        out << "source " << c.source << "\n";
        if (c.peak_rate_bps > 0)
            out << "peak_rate " << format_number(c.peak_rate_bps) << "\n";
        for (const RouteSpec& r : c.routes) {
            out << "route " << r.dest;
            if (!r.via.empty()) {
                out << " via";
                for (const std::string& v : r.via) out << " " << v;
            }
            out << "\n";
        }
    }

    if (!s.traffic.empty()) {
        out << "\n[traffic]\n";
        for (const TrafficBinding& b : s.traffic) {
            out << b.link << " ";
            switch (b.spec.kind) {
                case TrafficKind::Constant:
                    out << "constant " << format_number(b.spec.rate_bps);
                    break;
                case TrafficKind::SquareWave:
                    out << "squarewave " << format_number(b.spec.rate_bps) << " "
                        << format_number(b.spec.high_bps) << " "
                        << format_time(b.spec.half_period);
                    break;
                case TrafficKind::Poisson:
                    out << "poisson " << format_number(b.spec.rate_bps);
                    break;
            }
            out << "\n";
        }
    }

    const MechanismParams& m = s.mech;
    out << "\n[mechanism]\n";
    out << "type " << (m.kind == MechanismKind::RateBased ? "rate" : "credit") << "\n";
    out << "L " << m.max_layers << "\n";
    out << "initial_rate " << format_number(m.initial_rate_bps) << "\n";
    if (m.node_buffer_packets > 0) out << "node_buffer " << m.node_buffer_packets << "\n";
    out << "nf " << m.fwd_fb_spacing << "\n";
    out << "target_utilization " << format_number(m.target_utilization) << "\n";
    out << "erica_interval " << format_time(m.erica_interval) << "\n";
    out << "merge_timeout " << format_time(m.merge_timeout) << "\n";
    out << "peak_rate " << format_number(m.peak_rate_bps) << "\n";
    out << "min_rate " << format_number(m.min_rate_bps) << "\n";
    out << "fold_epsilon " << format_number(m.fold_epsilon_bps) << "\n";
    out << "nt " << m.nt << "\n";
    out << "dt " << m.dt << "\n";
    out << "rate_step_pps " << format_number(m.rate_step_bps / 424) << "\n";
    out << "reception_interval " << format_time(m.reception_interval) << "\n";
    out << "accumulation_interval " << format_time(m.accumulation_interval) << "\n";
    out << "src_buffer " << m.src_buffer_size << "\n";
    out << "src_lower " << m.src_lower << "\n";
    out << "src_middle " << m.src_middle << "\n";
    out << "src_upper " << m.src_upper << "\n";
    out << "condition2 " << (m.enable_condition2 ? "on" : "off") << "\n";
    return out.str();
}

void validate_scenario(const Scenario& s) {
    if (s.duration <= 0) throw ScenarioError(0, "duration must be positive");

    std::map<std::string, NodeRole> roles;
    for (const NodeSpec& n : s.nodes) {
        if (!roles.emplace(n.id, n.role).second)
            throw ScenarioError(0, "duplicate node id '" + n.id + "'");
    }

    std::map<std::pair<std::string, std::string>, const LinkSpec*> by_hop;
    std::set<std::string> link_ids;
    for (const LinkSpec& l : s.links) {
        if (!link_ids.insert(l.id).second)
            throw ScenarioError(0, "duplicate link id '" + l.id + "'");
        if (!roles.count(l.from))
            throw ScenarioError(0, "link " + l.id + ": unknown node '" + l.from + "'");
        if (!roles.count(l.to))
            throw ScenarioError(0, "link " + l.id + ": unknown node '" + l.to + "'");
        if (l.capacity_bps <= 0)
            throw ScenarioError(0, "link " + l.id + ": capacity must be positive");
        if (l.prop_delay < 0)
            throw ScenarioError(0, "link " + l.id + ": negative propagation delay");
        if (!by_hop.emplace(std::make_pair(l.from, l.to), &l).second)
            throw ScenarioError(0, "duplicate link " + l.from + " -> " + l.to);
    }

    if (s.connections.empty()) throw ScenarioError(0, "no connections defined");
    std::set<std::string> conn_ids;
    for (const ConnectionSpec& c : s.connections) {
        if (!conn_ids.insert(c.id).second)
            throw ScenarioError(0, "duplicate connection id '" + c.id + "'");
        auto src = roles.find(c.source);
        if (src == roles.end())
            throw ScenarioError(0, "connection " + c.id + ": unknown source '" + c.source + "'");
        if (src->second != NodeRole::Source)
            throw ScenarioError(0, "connection " + c.id + ": node '" + c.source +
                                       "' is not a source");
        if (c.routes.empty())
            throw ScenarioError(0, "connection " + c.id + ": no routes");

        // The routes must agree on a single parent per node: that makes the
        // union a tree rooted at the source, spanning every destination, and
        // feedback can return along the reverse path.
        std::map<std::string, std::string> parent;
        std::set<std::string> dests;
        for (const RouteSpec& r : c.routes) {
            auto d = roles.find(r.dest);
            if (d == roles.end())
                throw ScenarioError(0, "connection " + c.id + ": unknown destination '" +
                                           r.dest + "'");
            if (d->second != NodeRole::Destination)
                throw ScenarioError(0, "connection " + c.id + ": node '" + r.dest +
                                           "' is not a destination");
            if (!dests.insert(r.dest).second)
                throw ScenarioError(0, "connection " + c.id + ": duplicate route to '" +
                                           r.dest + "'");
            std::vector<std::string> path;
            path.push_back(c.source);
            for (const std::string& v : r.via) {
                auto it = roles.find(v);
                if (it == roles.end())
                    throw ScenarioError(0, "connection " + c.id + ": unknown node '" + v + "'");
                if (it->second != NodeRole::Intermediate)
                    throw ScenarioError(0, "connection " + c.id + ": via node '" + v +
                                               "' is not intermediate");
                path.push_back(v);
            }
            path.push_back(r.dest);
            for (std::size_t i = 0; i + 1 < path.size(); ++i) {
                if (!by_hop.count({path[i], path[i + 1]}))
                    throw ScenarioError(0, "connection " + c.id + ": no link " + path[i] +
                                               " -> " + path[i + 1]);
                auto ins = parent.emplace(path[i + 1], path[i]);
                if (!ins.second && ins.first->second != path[i])
                    throw ScenarioError(0, "connection " + c.id + ": node '" + path[i + 1] +
                                               "' has two parents (cyclic tree)");
            }
        }
    }

    std::set<std::string> bound_links;
    for (const TrafficBinding& b : s.traffic) {
        if (!link_ids.count(b.link))
            throw ScenarioError(0, "traffic bound to unknown link '" + b.link + "'");
        if (!bound_links.insert(b.link).second)
            throw ScenarioError(0, "link '" + b.link + "' has two traffic bindings");
        const LinkSpec* link = nullptr;
        for (const LinkSpec& l : s.links)
            if (l.id == b.link) link = &l;
        double peak = b.spec.kind == TrafficKind::SquareWave
                          ? std::max(b.spec.rate_bps, b.spec.high_bps)
                          : b.spec.rate_bps;
        if (b.spec.rate_bps <= 0)
            throw ScenarioError(0, "traffic on '" + b.link + "': rate must be positive");
        if (peak > link->capacity_bps)
            throw ScenarioError(0, "traffic on '" + b.link + "' exceeds link capacity");
        if (b.spec.kind == TrafficKind::SquareWave) {
            if (b.spec.half_period <= 0)
                throw ScenarioError(0, "traffic on '" + b.link + "': half_period must be positive");
            if (b.spec.high_bps < b.spec.rate_bps)
                throw ScenarioError(0, "traffic on '" + b.link + "': high rate below low rate");
        }
    }

    const MechanismParams& m = s.mech;
    if (m.max_layers < 1) throw ScenarioError(0, "L must be >= 1");
    if (m.target_utilization <= 0 || m.target_utilization > 1)
        throw ScenarioError(0, "target_utilization must be in (0, 1]");
    if (m.erica_interval <= 0 || m.merge_timeout <= 0 || m.reception_interval <= 0 ||
        m.accumulation_interval <= 0)
        throw ScenarioError(0, "intervals must be positive");
    if (m.fwd_fb_spacing < 1) throw ScenarioError(0, "nf must be >= 1");
    if (m.nt < 1 || m.dt < 1) throw ScenarioError(0, "nt and dt must be >= 1");
    if (m.rate_step_bps <= 0) throw ScenarioError(0, "rate_step_pps must be positive");
    if (m.initial_rate_bps <= 0 || m.peak_rate_bps <= 0 || m.min_rate_bps <= 0)
        throw ScenarioError(0, "rates must be positive");
    if (!(m.src_lower < m.src_middle && m.src_middle < m.src_upper &&
          m.src_upper < m.src_buffer_size))
        throw ScenarioError(0, "source buffer thresholds must satisfy lower < middle < upper < size");
    if (m.src_lower < 0) throw ScenarioError(0, "source buffer thresholds must be non-negative");
    if (m.node_buffer_packets == 0 || m.node_buffer_packets < -1)
        throw ScenarioError(0, "node_buffer must be positive");
}

// ---- Builders ----

Scenario build_responsiveness_topology(int experiment) {
    Scenario s;
    s.name = experiment == 2 ? "responsiveness2" : "responsiveness1";
    s.duration = seconds(12);
    s.nodes = {{"V", NodeRole::Source},        {"N1", NodeRole::Intermediate},
               {"N2", NodeRole::Intermediate}, {"N3", NodeRole::Intermediate},
               {"D1", NodeRole::Destination},  {"D2", NodeRole::Destination}};
    s.links = {{"A0", "V", "N1", 100e6, usec(5)},
               {"L1", "N1", "N2", 100e6, msec(5)},
               {"L2", "N1", "N3", 100e6, msec(5)},
               {"A1", "N2", "D1", 100e6, usec(5)},
               {"A2", "N3", "D2", 100e6, usec(5)}};
    ConnectionSpec c;
    c.id = "c1";
    c.source = "V";
    c.routes = {{"D1", {"N1", "N2"}}, {"D2", {"N1", "N3"}}};
    s.connections = {c};
    if (experiment == 1 || experiment == 2) {
        TrafficBinding l1;
        l1.link = "L1";
        l1.spec.kind = TrafficKind::Constant;
        l1.spec.rate_bps = experiment == 2 ? 98e6 : 90e6;
        TrafficBinding l2;
        l2.link = "L2";
        l2.spec.kind = TrafficKind::SquareWave;
        l2.spec.rate_bps = 90e6;
        l2.spec.high_bps = 95e6;
        l2.spec.half_period = seconds(2);
        s.traffic = {l1, l2};
    }
    s.mech.max_layers = 2;
    validate_scenario(s);
    return s;
}

Scenario build_scalability_topology(int max_layers, SimTime inter_node_delay) {
    Scenario s;
    s.name = "scalability";
    s.duration = seconds(10);
    s.nodes.push_back({"V", NodeRole::Source});
    for (int i = 1; i <= 7; ++i)
        s.nodes.push_back({"N" + std::to_string(i), NodeRole::Intermediate});
    for (int i = 1; i <= 8; ++i)
        s.nodes.push_back({"D" + std::to_string(i), NodeRole::Destination});

    s.links.push_back({"A0", "V", "N1", 100e6, usec(5)});
    auto inter = [&](const std::string& id, const std::string& a, const std::string& b) {
        s.links.push_back({id, a, b, 100e6, inter_node_delay});
    };
    inter("L1", "N1", "N2");
    inter("L2", "N1", "N3");
    inter("L3", "N2", "N4");
    inter("L4", "N2", "N5");
    inter("L5", "N3", "N6");
    inter("L6", "N3", "N7");
    const char* leaf_of_dest[8] = {"N4", "N4", "N5", "N5", "N6", "N6", "N7", "N7"};
    for (int i = 1; i <= 8; ++i)
        s.links.push_back({"B" + std::to_string(i), leaf_of_dest[i - 1],
                           "D" + std::to_string(i), 100e6, usec(5)});

    ConnectionSpec c;
    c.id = "c1";
    c.source = "V";
    const char* mid_of_dest[8] = {"N2", "N2", "N2", "N2", "N3", "N3", "N3", "N3"};
    for (int i = 1; i <= 8; ++i)
        c.routes.push_back({"D" + std::to_string(i),
                            {"N1", mid_of_dest[i - 1], leaf_of_dest[i - 1]}});
    s.connections = {c};

    for (int i = 1; i <= 6; ++i) {
        TrafficBinding b;
        b.link = "L" + std::to_string(i);
        b.spec.kind = TrafficKind::Poisson;
        b.spec.rate_bps = 90e6;
        s.traffic.push_back(b);
    }
    // Loads ramp linearly from 0.90 at D1 to 0.97 at D8.
    for (int i = 1; i <= 8; ++i) {
        TrafficBinding b;
        b.link = "B" + std::to_string(i);
        b.spec.kind = TrafficKind::Poisson;
        b.spec.rate_bps = (89 + i) * 1e6;
        s.traffic.push_back(b);
    }
    s.mech.max_layers = max_layers;
    validate_scenario(s);
    return s;
}

Scenario build_fairness_topology(SimTime inter_node_delay) {
    Scenario s;
    s.name = "fairness";
    s.duration = seconds(10);
    s.nodes = {{"V1", NodeRole::Source},       {"V2", NodeRole::Source},
               {"V3", NodeRole::Source},       {"N1", NodeRole::Intermediate},
               {"N2", NodeRole::Intermediate}, {"N3", NodeRole::Intermediate},
               {"D", NodeRole::Destination}};
    s.links = {{"A1", "V1", "N1", 100e6, usec(5)},
               {"A2", "V2", "N2", 100e6, usec(5)},
               {"A3", "V3", "N3", 100e6, usec(5)},
               {"L1", "N1", "N2", 100e6, inter_node_delay},
               {"L2", "N2", "N3", 100e6, inter_node_delay},
               {"L3", "N3", "D", 100e6, usec(5)}};
    ConnectionSpec c1;
    c1.id = "c1";
    c1.source = "V1";
    c1.routes = {{"D", {"N1", "N2", "N3"}}};
    ConnectionSpec c2;
    c2.id = "c2";
    c2.source = "V2";
    c2.routes = {{"D", {"N2", "N3"}}};
    ConnectionSpec c3;
    c3.id = "c3";
    c3.source = "V3";
    c3.routes = {{"D", {"N3"}}};
    s.connections = {c1, c2, c3};
    for (const char* l : {"L1", "L2", "L3"}) {
        TrafficBinding b;
        b.link = l;
        b.spec.kind = TrafficKind::Poisson;
        b.spec.rate_bps = 90e6;
        s.traffic.push_back(b);
    }
    s.mech.max_layers = 2;
    validate_scenario(s);
    return s;
}

}  // namespace lvsim
