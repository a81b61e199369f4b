// Scenario runner: loads a scenario file or a named built-in experiment,
// runs it under one or both mechanisms, and writes metric CSVs.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lvsim/export.hpp"
#include "lvsim/scenario.hpp"
#include "lvsim/simulation.hpp"

namespace {

using namespace lvsim;

struct CliConfig {
    std::string scenario_path;
    std::string builtin;
    std::string mechanism;  // "", rate, credit, both
    std::uint64_t seed = 0;
    bool seed_set = false;
    double duration_s = 0;
    std::string out_dir;
    std::vector<std::string> overrides;
    bool quiet = false;
};

std::string get_override(std::vector<std::string>& overrides, const std::string& key,
                         const std::string& fallback) {
    std::string value = fallback;
    auto it = overrides.begin();
    while (it != overrides.end()) {
        auto eq = it->find('=');
        if (eq != std::string::npos && it->substr(0, eq) == key) {
            value = it->substr(eq + 1);
            it = overrides.erase(it);
        } else {
            ++it;
        }
    }
    return value;
}

SimTime parse_delay(const std::string& text) { return parse_time_text(text); }

Scenario load_scenario(const CliConfig& cfg, std::vector<std::string>& overrides) {
    Scenario s;
    if (!cfg.scenario_path.empty()) {
        std::ifstream in(cfg.scenario_path, std::ios::binary);
        if (!in) throw ScenarioError(0, "cannot open " + cfg.scenario_path);
        std::ostringstream body;
        body << in.rdbuf();
        s = parse_scenario(body.str());
    } else if (cfg.builtin == "responsiveness1") {
        s = build_responsiveness_topology(1);
    } else if (cfg.builtin == "responsiveness2") {
        s = build_responsiveness_topology(2);
    } else if (cfg.builtin == "scalability") {
        SimTime d = parse_delay(get_override(overrides, "inter_node_delay", "50us"));
        s = build_scalability_topology(4, d);
    } else if (cfg.builtin == "fairness") {
        SimTime d = parse_delay(get_override(overrides, "delay", "5us"));
        s = build_fairness_topology(d);
    } else {
        throw ScenarioError(0, "unknown builtin '" + cfg.builtin + "'");
    }
    return s;
}

void apply_common(Scenario& s, const CliConfig& cfg,
                  const std::vector<std::string>& overrides) {
    if (cfg.seed_set) s.seed = cfg.seed;
    if (cfg.duration_s > 0) s.duration = from_seconds(cfg.duration_s);
    for (const std::string& kv : overrides) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ScenarioError(0, "--set expects key=value, got '" + kv + "'");
        apply_override(s, kv.substr(0, eq), kv.substr(eq + 1));
    }
}

std::vector<MechanismKind> mechanisms_for(const CliConfig& cfg, const Scenario& s) {
    if (cfg.mechanism == "" ) return {s.mech.kind};
    if (cfg.mechanism == "rate") return {MechanismKind::RateBased};
    if (cfg.mechanism == "credit") return {MechanismKind::CreditBased};
    if (cfg.mechanism == "both")
        return {MechanismKind::RateBased, MechanismKind::CreditBased};
    throw ScenarioError(0, "mechanism must be rate, credit or both");
}

std::string out_path(const std::string& dir, const std::string& file) {
    return (std::filesystem::path(dir) / file).string();
}

void print_summary(const RunResult& r, bool quiet) {
    if (quiet) return;
    std::cout << r.scenario_name << " [" << mechanism_name(r.mechanism) << ", seed "
              << r.seed << "]: mean goodput ratio " << csv_double(r.goodput.mean_ratio);
    if (r.fairness) {
        std::cout << ", rates";
        for (double v : r.fairness->rates_bps) std::cout << " " << csv_double(v / 1e6);
        std::cout << " Mbps, sigma " << csv_double(r.fairness->sigma_bps / 1e6) << " Mbps";
    }
    std::cout << "\n";
}

int run_single(const CliConfig& cfg, std::vector<std::string> overrides) {
    Scenario base = load_scenario(cfg, overrides);
    apply_common(base, cfg, overrides);
    auto mechs = mechanisms_for(cfg, base);

    std::vector<RunResult> results;
    for (MechanismKind mech : mechs) {
        Scenario s = base;
        s.mech.kind = mech;
        RunResult r = run_simulation(s);
        if (!r.conservation_ok) {
            std::cerr << "conservation violated in " << s.name << "\n";
            return 3;
        }
        print_summary(r, cfg.quiet);
        std::string suffix = mechs.size() > 1
                                 ? std::string("_") + mechanism_name(mech)
                                 : std::string();
        export_layers_csv(out_path(cfg.out_dir, "layers" + suffix + ".csv"), r);
        results.push_back(std::move(r));
    }
    export_goodput_csv(out_path(cfg.out_dir, "goodput.csv"), results);
    return 0;
}

int run_scalability(const CliConfig& cfg, std::vector<std::string> overrides) {
    std::string sweep = get_override(overrides, "sweep", "layers");
    std::string delay_text = get_override(overrides, "inter_node_delay", "50us");

    std::vector<SweepRow> rows;
    std::vector<RunResult> detail;
    CliConfig point_cfg = cfg;

    if (sweep == "layers") {
        for (int layers = 2; layers <= 8; ++layers) {
            Scenario base = build_scalability_topology(layers, parse_delay(delay_text));
            std::vector<std::string> ov = overrides;
            apply_common(base, cfg, ov);
            base.mech.max_layers = layers;
            for (MechanismKind mech : mechanisms_for(cfg, base)) {
                Scenario s = base;
                s.mech.kind = mech;
                RunResult r = run_simulation(s);
                if (!r.conservation_ok) return 3;
                print_summary(r, cfg.quiet);
                rows.push_back({mech, static_cast<double>(layers), r.goodput.mean_ratio});
                detail.push_back(std::move(r));
            }
        }
        export_goodput_sweep_csv(out_path(cfg.out_dir, "goodput_vs_L.csv"), "max_layers",
                                 rows);
    } else if (sweep == "delay") {
        for (const char* d : {"5us", "50us", "500us", "5ms"}) {
            Scenario base = build_scalability_topology(4, parse_delay(d));
            std::vector<std::string> ov = overrides;
            apply_common(base, cfg, ov);
            for (MechanismKind mech : mechanisms_for(cfg, base)) {
                Scenario s = base;
                s.mech.kind = mech;
                RunResult r = run_simulation(s);
                if (!r.conservation_ok) return 3;
                print_summary(r, cfg.quiet);
                rows.push_back({mech, to_seconds(parse_delay(d)) * 1e6,
                                r.goodput.mean_ratio});
                detail.push_back(std::move(r));
            }
        }
        export_goodput_sweep_csv(out_path(cfg.out_dir, "goodput_vs_delay.csv"),
                                 "inter_node_delay_us", rows);
    } else {
        throw ScenarioError(0, "sweep must be layers or delay");
    }
    export_goodput_csv(out_path(cfg.out_dir, "goodput.csv"), detail);
    (void)point_cfg;
    return 0;
}

int run_fairness(const CliConfig& cfg, std::vector<std::string> overrides) {
    std::string single_delay = get_override(overrides, "delay", "");
    std::vector<std::string> delays;
    if (!single_delay.empty())
        delays = {single_delay};
    else
        delays = {"5us", "50us", "500us", "5ms"};

    std::vector<FairnessRow> rows;
    for (const std::string& d : delays) {
        Scenario base = build_fairness_topology(parse_delay(d));
        std::vector<std::string> ov = overrides;
        apply_common(base, cfg, ov);
        for (MechanismKind mech : mechanisms_for(cfg, base)) {
            Scenario s = base;
            s.mech.kind = mech;
            RunResult r = run_simulation(s);
            if (!r.conservation_ok) return 3;
            print_summary(r, cfg.quiet);
            FairnessRow row;
            row.mechanism = mech;
            row.delay_us = to_seconds(parse_delay(d)) * 1e6;
            row.rates_bps = r.fairness ? r.fairness->rates_bps : std::vector<double>{};
            row.sigma_bps = r.fairness ? r.fairness->sigma_bps : 0;
            rows.push_back(std::move(row));
        }
    }
    export_fairness_csv(out_path(cfg.out_dir, "fairness.csv"), rows);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CliConfig cfg;
    CLI::App app{"lvsim: packet-level simulator for adaptive multi-layered video multicast"};
    app.add_option("--scenario", cfg.scenario_path, "scenario file to run");
    app.add_option("--builtin", cfg.builtin,
                   "built-in experiment: responsiveness1, responsiveness2, scalability, fairness");
    app.add_option("--mechanism", cfg.mechanism, "rate, credit or both");
    auto* seed_opt = app.add_option("--seed", cfg.seed, "run seed");
    app.add_option("--duration", cfg.duration_s, "simulated seconds");
    app.add_option("--out", cfg.out_dir, "output directory for CSV files");
    app.add_option("--set", cfg.overrides, "parameter override key=value (repeatable)");
    app.add_flag("--quiet", cfg.quiet, "suppress summary output");
    CLI11_PARSE(app, argc, argv);
    cfg.seed_set = seed_opt->count() > 0;

    if (cfg.out_dir.empty()) {
        const char* env = std::getenv("LVSIM_OUT");
        cfg.out_dir = env ? env : ".";
    }
    if (cfg.scenario_path.empty() == cfg.builtin.empty()) {
        std::cerr << "exactly one of --scenario or --builtin is required\n";
        return 2;
    }

    try {
        std::error_code ec;
        std::filesystem::create_directories(cfg.out_dir, ec);
        if (cfg.builtin == "scalability") return run_scalability(cfg, cfg.overrides);
        if (cfg.builtin == "fairness") return run_fairness(cfg, cfg.overrides);
        return run_single(cfg, cfg.overrides);
    } catch (const ScenarioError& e) {
        std::cerr << "scenario error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 3;
    }
}
