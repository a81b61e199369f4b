#include "lvsim/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace lvsim {

double population_sigma(const std::vector<double>& values) {
    if (values.empty()) return 0;
    double mean = 0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(values.size());
    return std::sqrt(var);
}

GoodputRatioReport make_goodput_report(std::vector<DestGoodput> per_dest) {
    GoodputRatioReport r;
    r.per_dest = std::move(per_dest);
    double sum = 0;
    int n = 0;
    for (const DestGoodput& d : r.per_dest) {
        if (d.ratio >= 0) {
            sum += d.ratio;
            ++n;
        }
    }
    r.mean_ratio = n > 0 ? sum / n : 0;
    return r;
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::string>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << header << "\n";
    for (const std::string& row : rows) out << row << "\n";
    if (!out) throw std::runtime_error("write failed for " + path);
}

std::string csv_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace lvsim
