#include "lvsim/export.hpp"

#include <sstream>

namespace lvsim {

const char* mechanism_name(MechanismKind kind) {
    return kind == MechanismKind::RateBased ? "rate" : "credit";
}

void export_layers_csv(const std::string& path, const RunResult& r) {
    const bool multi = r.conn_ids.size() > 1;
    std::vector<std::string> rows;
    for (std::size_t c = 0; c < r.layers.size(); ++c) {
        for (const LayerSample& s : r.layers[c]) {
            for (std::size_t i = 0; i < s.cumulative.size(); ++i) {
                std::ostringstream row;
                if (multi) row << r.conn_ids[c] << ",";
                row << csv_double(to_seconds(s.t)) << "," << (i + 1) << ","
                    << csv_double(s.cumulative[i]);
                rows.push_back(row.str());
            }
        }
    }
    write_csv(path,
              multi ? "conn,t_seconds,layer_index,cumulative_rate_bps"
                    : "t_seconds,layer_index,cumulative_rate_bps",
              rows);
}

void export_goodput_csv(const std::string& path, const std::vector<RunResult>& runs) {
    std::vector<std::string> rows;
    for (const RunResult& r : runs) {
        for (const DestGoodput& d : r.goodput.per_dest) {
            std::ostringstream row;
            row << mechanism_name(r.mechanism) << "," << d.dest << ","
                << csv_double(d.mean_goodput_bps) << ","
                << csv_double(d.mean_available_bps) << "," << csv_double(d.ratio);
            rows.push_back(row.str());
        }
    }
    write_csv(path, "mechanism,destination,mean_goodput_bps,mean_available_bps,goodput_ratio",
              rows);
}

void export_goodput_sweep_csv(const std::string& path, const std::string& x_column,
                              const std::vector<SweepRow>& rows) {
    std::vector<std::string> out;
    for (const SweepRow& r : rows) {
        std::ostringstream row;
        row << mechanism_name(r.mechanism) << "," << csv_double(r.x) << ","
            << csv_double(r.mean_goodput_ratio);
        out.push_back(row.str());
    }
    write_csv(path, "mechanism," + x_column + ",mean_goodput_ratio", out);
}

void export_fairness_csv(const std::string& path, const std::vector<FairnessRow>& rows) {
    std::vector<std::string> out;
    std::size_t nsrc = rows.empty() ? 0 : rows.front().rates_bps.size();
    std::ostringstream header;
    header << "mechanism,delay_us";
    for (std::size_t i = 1; i <= nsrc; ++i) header << ",v" << i << "_mbps";
    header << ",sigma_mbps";
    for (const FairnessRow& r : rows) {
        std::ostringstream row;
        row << mechanism_name(r.mechanism) << "," << csv_double(r.delay_us);
        for (double rate : r.rates_bps) row << "," << csv_double(rate / 1e6);
        row << "," << csv_double(r.sigma_bps / 1e6);
        out.push_back(row.str());
    }
    write_csv(path, header.str(), out);
}

}  // namespace lvsim
