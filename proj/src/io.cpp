// SPDX-License-Identifier: Apache-2.0
//
// risdfrc - RIS-based dual-function radar-communication transmitter design.

#include "risdfrc/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace risdfrc {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string Table::header_value(const std::string& key) const {
    for (const auto& [k, v] : header) {
        if (k == key) return v;
    }
    return {};
}

void write_table(const std::string& path, const Table& table) {
    std::ofstream out = open_out(path);
    for (const auto& [key, value] : table.header) out << "# " << key << ": " << value << "\n";
    out << "# columns:";
    for (const auto& c : table.columns) out << " " << c;
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out << " ";
            out << row[i];
        }
        out << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

Table read_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    Table table;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string body = line.substr(1);
            const auto colon = body.find(':');
            if (colon == std::string::npos) continue;
            std::string key = body.substr(0, colon);
            std::string value = body.substr(colon + 1);
            auto trim = [](std::string& s) {
                const auto b = s.find_first_not_of(" \t");
                const auto e = s.find_last_not_of(" \t\r");
                s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
            };
            trim(key);
            trim(value);
            if (key == "columns") {
                std::istringstream is(value);
                std::string c;
                while (is >> c) table.columns.push_back(c);
            } else {
                table.header.emplace_back(key, value);
            }
            continue;
        }
        std::istringstream is(line);
        std::vector<std::string> row;
        std::string cell;
        while (is >> cell) row.push_back(cell);
        if (!row.empty()) table.rows.push_back(std::move(row));
    }
    return table;
}

void export_complex_vector(const std::string& path, const Eigen::VectorXcd& v,
                           const HeaderEntries& header) {
    Table table;
    table.header = header;
    table.header.emplace_back("length", std::to_string(v.size()));
    table.columns = {"index", "re", "im"};
    table.rows.reserve(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        table.rows.push_back(
            {std::to_string(i), format_double(v[i].real()), format_double(v[i].imag())});
    }
    write_table(path, table);
}

Eigen::VectorXcd import_complex_vector(const std::string& path) {
    const Table table = read_table(path);
    Eigen::VectorXcd v(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        if (table.rows[i].size() != 3) {
            throw std::runtime_error("malformed complex-vector row in " + path);
        }
        v[static_cast<Eigen::Index>(i)] =
            cplx(std::stod(table.rows[i][1]), std::stod(table.rows[i][2]));
    }
    return v;
}

void export_trace(const std::string& path, const ObjectiveTrace& trace,
                  const HeaderEntries& header) {
    Table table;
    table.header = header;
    table.header.emplace_back("iterations", std::to_string(trace.iterations));
    table.header.emplace_back("converged", trace.converged ? "true" : "false");
    table.columns = {"iter", "objective"};
    for (std::size_t i = 0; i < trace.objectives.size(); ++i) {
        table.rows.push_back({std::to_string(i), format_double(trace.objectives[i])});
    }
    write_table(path, table);
}

void export_beampattern(const std::string& path, const BeampatternMap& map,
                        const HeaderEntries& header) {
    const Grids& g = map.grids;
    Table table;
    table.header = header;
    table.header.emplace_back("num_freq", std::to_string(g.num_freqs()));
    table.header.emplace_back("num_angles", std::to_string(g.num_angles()));
    table.header.emplace_back("n_theta", std::to_string(g.n_theta));
    table.header.emplace_back("n_phi", std::to_string(g.n_phi));
    table.columns = {"freq_hz", "theta_rad", "phi_rad", "value"};
    table.rows.reserve(static_cast<std::size_t>(g.num_freqs()) * g.num_angles());
    for (int k = 0; k < g.num_freqs(); ++k) {
        for (int l = 0; l < g.num_angles(); ++l) {
            table.rows.push_back({format_double(g.freqs[k]), format_double(g.theta[l]),
                                  format_double(g.phi[l]), format_double(map.values(k, l))});
        }
    }
    write_table(path, table);
}

BeampatternMap import_beampattern(const std::string& path) {
    const Table table = read_table(path);
    const int k_count = std::stoi(table.header_value("num_freq"));
    const int l_count = std::stoi(table.header_value("num_angles"));
    if (k_count <= 0 || l_count <= 0 ||
        table.rows.size() != static_cast<std::size_t>(k_count) * l_count) {
        throw std::runtime_error("malformed beampattern file: " + path);
    }
    BeampatternMap map;
    map.grids.n_theta = std::stoi(table.header_value("n_theta"));
    map.grids.n_phi = std::stoi(table.header_value("n_phi"));
    map.grids.freqs.resize(k_count);
    map.grids.theta.resize(l_count);
    map.grids.phi.resize(l_count);
    map.values.resize(k_count, l_count);
    for (int k = 0; k < k_count; ++k) {
        for (int l = 0; l < l_count; ++l) {
            const auto& row = table.rows[static_cast<std::size_t>(k) * l_count + l];
            if (row.size() != 4) throw std::runtime_error("malformed beampattern row: " + path);
            map.grids.freqs[k] = std::stod(row[0]);
            map.grids.theta[l] = std::stod(row[1]);
            map.grids.phi[l] = std::stod(row[2]);
            map.values(k, l) = std::stod(row[3]);
        }
    }
    return map;
}

void export_beampattern_cut(const std::string& path, const BeampatternMap& map, double f_select,
                            bool normalize, const HeaderEntries& header) {
    const Grids& g = map.grids;
    const double tol = 1e-6 + 1e-12 * std::abs(f_select);
    int k_sel = -1;
    for (int k = 0; k < g.num_freqs(); ++k) {
        if (std::abs(g.freqs[k] - f_select) <= tol) {
            k_sel = k;
            break;
        }
    }
    if (k_sel < 0) {
        int best = 0, second = -1;
        for (int k = 1; k < g.num_freqs(); ++k) {
            const double d = std::abs(g.freqs[k] - f_select);
            if (d < std::abs(g.freqs[best] - f_select)) {
                second = best;
                best = k;
            } else if (second < 0 || d < std::abs(g.freqs[second] - f_select)) {
                second = k;
            }
        }
        std::ostringstream os;
        os << "frequency " << format_double(f_select)
           << " Hz is not on the grid; nearest grid frequencies: "
           << format_double(g.freqs[best]);
        if (second >= 0) os << ", " << format_double(g.freqs[second]);
        os << " Hz";
        throw std::invalid_argument(os.str());
    }

    Eigen::MatrixXd values;
    if (normalize) {
        values = normalized_power_db(map);
    } else {
        values = map.values;
    }

    Table table;
    table.header = header;
    table.header.emplace_back("freq_hz", format_double(g.freqs[k_sel]));
    table.header.emplace_back("value_kind", normalize ? "npb_db" : "amplitude");
    table.header.emplace_back(
        "grid", "angles are cell centers of a uniform grid over [-90,90]x[-90,90] degrees; "
                "rows ordered theta-major");
    table.header.emplace_back("n_theta", std::to_string(g.n_theta));
    table.header.emplace_back("n_phi", std::to_string(g.n_phi));
    table.columns = {"theta_deg", "phi_deg", "value"};
    for (int l = 0; l < g.num_angles(); ++l) {
        table.rows.push_back({format_double(g.theta[l] * 180.0 / kPi),
                              format_double(g.phi[l] * 180.0 / kPi),
                              format_double(values(k_sel, l))});
    }
    write_table(path, table);
}

void export_tradeoff(const std::string& path, const std::vector<OperatingPoint>& points,
                     const HeaderEntries& header) {
    Table table;
    table.header = header;
    table.columns = {"eta", "rate", "rate_stderr", "pd", "pd_stderr", "architecture"};
    for (const auto& p : points) {
        table.rows.push_back({format_double(p.eta), format_double(p.rate),
                              format_double(p.rate_stderr), format_double(p.pd),
                              format_double(p.pd_stderr), p.arch});
    }
    write_table(path, table);
}

void write_meta(const std::string& path, const HeaderEntries& entries) {
    nlohmann::json doc;
    for (const auto& [key, value] : entries) doc[key] = value;
    std::ofstream out = open_out(path);
    out << doc.dump(2) << "\n";
}

}  // namespace risdfrc
