#ifndef LVSIM_EXPORT_HPP
#define LVSIM_EXPORT_HPP

#include <string>
#include <vector>

#include "lvsim/simulation.hpp"

namespace lvsim {

const char* mechanism_name(MechanismKind kind);

// layers.csv: (t_seconds, layer_index, cumulative_rate_bps); a leading conn
// column is added for multi-connection scenarios.
void export_layers_csv(const std::string& path, const RunResult& r);

// goodput.csv: per-destination detail, one row per (mechanism run, dest).
void export_goodput_csv(const std::string& path, const std::vector<RunResult>& runs);

struct SweepRow {
    MechanismKind mechanism;
    double x = 0;  // L or delay in microseconds
    double mean_goodput_ratio = 0;
};
// goodput_vs_L.csv / goodput_vs_delay.csv
void export_goodput_sweep_csv(const std::string& path, const std::string& x_column,
                              const std::vector<SweepRow>& rows);

struct FairnessRow {
    MechanismKind mechanism;
    double delay_us = 0;
    std::vector<double> rates_bps;
    double sigma_bps = 0;
};
// fairness.csv: (mechanism, delay_us, v1_mbps, v2_mbps, v3_mbps, sigma_mbps)
void export_fairness_csv(const std::string& path, const std::vector<FairnessRow>& rows);

}  // namespace lvsim

#endif
