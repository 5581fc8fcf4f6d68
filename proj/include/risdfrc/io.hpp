// SPDX-License-Identifier: Apache-2.0
//
// risdfrc - RIS-based dual-function radar-communication transmitter design.
//
// Plain-text tabular export/import. Files start with '# key: value' header
// lines (config hash, seed, grid shape, ...), then a '# columns: ...' line,
// then whitespace-separated rows. Floats are written with 17 significant
// digits so re-reading reproduces the in-memory doubles exactly.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "risdfrc/optimizer.hpp"
#include "risdfrc/performance.hpp"
#include "risdfrc/scene.hpp"

namespace risdfrc {

using HeaderEntries = std::vector<std::pair<std::string, std::string>>;

/// 17-significant-digit formatting (lossless round trip for doubles).
std::string format_double(double v);

struct Table {
    HeaderEntries header;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::string header_value(const std::string& key) const;  // "" when absent
};

void write_table(const std::string& path, const Table& table);
Table read_table(const std::string& path);

/// Complex vector as rows (index, re, im).
void export_complex_vector(const std::string& path, const Eigen::VectorXcd& v,
                           const HeaderEntries& header);
Eigen::VectorXcd import_complex_vector(const std::string& path);

/// Objective trace as rows (iter, objective).
void export_trace(const std::string& path, const ObjectiveTrace& trace,
                  const HeaderEntries& header);

/// Full beampattern map as rows (freq_hz, theta_rad, phi_rad, value); the
/// header records the grid shape so the map can be re-imported.
void export_beampattern(const std::string& path, const BeampatternMap& map,
                        const HeaderEntries& header);
BeampatternMap import_beampattern(const std::string& path);

/// One frequency cut as rows (theta_deg, phi_deg, value); with normalize the
/// value is the normalized power beampattern in dB (normalized by the global
/// map maximum). Throws std::invalid_argument for an off-grid frequency,
/// listing the nearest grid frequencies.
void export_beampattern_cut(const std::string& path, const BeampatternMap& map, double f_select,
                            bool normalize, const HeaderEntries& header);

/// Operating-characteristic rows (eta, rate, rate_stderr, pd, pd_stderr, architecture).
void export_tradeoff(const std::string& path, const std::vector<OperatingPoint>& points,
                     const HeaderEntries& header);

/// Small JSON sidecar for run metadata (wall time and friends live here, not
/// in the deterministic tables).
void write_meta(const std::string& path, const HeaderEntries& entries);

}  // namespace risdfrc
