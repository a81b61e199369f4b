#ifndef LVSIM_METRICS_HPP
#define LVSIM_METRICS_HPP

#include <string>
#include <vector>

#include "lvsim/sim_time.hpp"

namespace lvsim {

// Per-destination goodput over the steady-state window.
struct DestGoodput {
    std::string dest;
    double mean_goodput_bps = 0;
    double mean_available_bps = 0;
    double ratio = 0;  // undefined (reported as -1) when available is 0
};

struct GoodputRatioReport {
    std::vector<DestGoodput> per_dest;
    double mean_ratio = 0;  // aggregate over destinations with defined ratios
};

// Per-source mean bit rates across the designated bottleneck link.
struct FairnessReport {
    std::vector<std::string> sources;
    std::vector<double> rates_bps;
    double sigma_bps = 0;
};

// Population standard deviation; zero iff all values equal.
double population_sigma(const std::vector<double>& values);

GoodputRatioReport make_goodput_report(std::vector<DestGoodput> per_dest);

// CSV helpers. All files carry a header row; units are SI (bits/s, seconds).
void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows);

std::string csv_double(double v);

}  // namespace lvsim

#endif
