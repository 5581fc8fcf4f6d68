// SPDX-License-Identifier: Apache-2.0
//
// risdfrc - RIS-based dual-function radar-communication transmitter design.

#include "risdfrc/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <set>
#include <sstream>

#include <json.hpp>

namespace risdfrc {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ConfigError(std::vector<ConfigError::Entry>{{path, message}});
}

std::string join_errors(const std::vector<ConfigError::Entry>& entries) {
    std::ostringstream os;
    os << "invalid configuration (" << entries.size() << " problem"
       << (entries.size() == 1 ? "" : "s") << "):";
    for (const auto& e : entries) os << "\n  " << e.path << ": " << e.message;
    return os.str();
}

class Checker {
  public:
    explicit Checker(const json& root) : root_(root) {}

    const json* section(const std::string& name, const std::set<std::string>& allowed) {
        if (!root_.contains(name)) return nullptr;
        const json& sec = root_.at(name);
        if (!sec.is_object()) {
            error(name, "must be an object");
            return nullptr;
        }
        for (const auto& item : sec.items()) {
            if (allowed.find(item.key()) == allowed.end()) {
                error(name + "." + item.key(), "unknown key");
            }
        }
        return &sec;
    }

    void check_top_level(const std::set<std::string>& allowed) {
        for (const auto& item : root_.items()) {
            if (allowed.find(item.key()) == allowed.end()) error(item.key(), "unknown key");
        }
    }

    template <typename T>
    void number(const json* sec, const std::string& sec_name, const std::string& key, T& out,
                double lo, double hi, bool lo_open = false, bool hi_open = false) {
        if (sec == nullptr || !sec->contains(key)) return;
        const json& v = sec->at(key);
        const std::string path = sec_name + "." + key;
        if (!v.is_number()) {
            error(path, "must be a number");
            return;
        }
        const double d = v.get<double>();
        if constexpr (std::is_integral_v<T>) {
            if (d != static_cast<double>(static_cast<T>(d))) {
                error(path, "must be an integer");
                return;
            }
        }
        const bool lo_ok = lo_open ? d > lo : d >= lo;
        const bool hi_ok = hi_open ? d < hi : d <= hi;
        if (!lo_ok || !hi_ok) {
            std::ostringstream os;
            os << "value " << d << " outside " << (lo_open ? "(" : "[") << lo << ", " << hi
               << (hi_open ? ")" : "]");
            error(path, os.str());
            return;
        }
        out = static_cast<T>(d);
    }

    void number_list(const json* sec, const std::string& sec_name, const std::string& key,
                     std::vector<double>& out, double lo, double hi) {
        if (sec == nullptr || !sec->contains(key)) return;
        const json& v = sec->at(key);
        const std::string path = sec_name + "." + key;
        if (!v.is_array() || v.empty()) {
            error(path, "must be a nonempty array of numbers");
            return;
        }
        std::vector<double> values;
        for (const auto& item : v) {
            if (!item.is_number()) {
                error(path, "must contain only numbers");
                return;
            }
            const double d = item.get<double>();
            if (d < lo || d > hi) {
                std::ostringstream os;
                os << "entry " << d << " outside [" << lo << ", " << hi << "]";
                error(path, os.str());
                return;
            }
            values.push_back(d);
        }
        out = std::move(values);
    }

    void text(const json* sec, const std::string& sec_name, const std::string& key,
              std::string& out) {
        if (sec == nullptr || !sec->contains(key)) return;
        const json& v = sec->at(key);
        if (!v.is_string()) {
            error(sec_name + "." + key, "must be a string");
            return;
        }
        out = v.get<std::string>();
    }

    void error(const std::string& path, const std::string& message) {
        entries_.push_back({path, message});
    }

    bool ok() const { return entries_.empty(); }
    std::vector<ConfigError::Entry> take() { return std::move(entries_); }

  private:
    const json& root_;
    std::vector<ConfigError::Entry> entries_;
};

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (const unsigned char c : data) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string to_hex(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[v & 0xF];
        v >>= 4;
    }
    return out;
}

json resolved_document(const RunConfig& cfg) {
    json doc;
    doc["scenario"] = {{"ris_rows", cfg.scene.ris.rows},
                       {"ris_cols", cfg.scene.ris.cols},
                       {"ris_spacing_m", cfg.scene.ris.spacing},
                       {"num_sources", cfg.scene.num_sources()},
                       {"source_distance_m", std::abs(cfg.scene.sources.positions[0].z())},
                       {"element_peak_gain", cfg.scene.ris_pattern.peak_gain},
                       {"pulse_duration_s", cfg.scene.signal.pulse_duration},
                       {"bandwidth_hz", cfg.scene.signal.bandwidth},
                       {"carrier_hz", cfg.scene.signal.carrier},
                       {"power_w", cfg.scene.power}};
    doc["grids"] = {{"num_freq", cfg.num_freq}, {"num_theta", cfg.n_theta},
                    {"num_phi", cfg.n_phi}};
    doc["desired"] = {
        {"eta", cfg.eta},
        {"radar_band_hz", {cfg.layout.radar.f_lo, cfg.layout.radar.f_hi}},
        {"radar_box_rad",
         {cfg.layout.radar.box.theta_lo, cfg.layout.radar.box.theta_hi,
          cfg.layout.radar.box.phi_lo, cfg.layout.radar.box.phi_hi}},
        {"comm_band_hz", {cfg.layout.comm.f_lo, cfg.layout.comm.f_hi}},
        {"comm_box_rad",
         {cfg.layout.comm.box.theta_lo, cfg.layout.comm.box.theta_hi,
          cfg.layout.comm.box.phi_lo, cfg.layout.comm.box.phi_hi}}};
    doc["optimizer"] = {{"max_outer_iters", cfg.optimizer.max_outer_iters},
                        {"rel_obj_tol", cfg.optimizer.rel_obj_tol},
                        {"lambda_bisect_tol", cfg.optimizer.lambda_bisect_tol},
                        {"lambda_bisect_max_iters", cfg.optimizer.lambda_bisect_max_iters},
                        {"x_inner_sweeps", cfg.optimizer.x_inner_sweeps},
                        {"seed", cfg.optimizer.seed},
                        {"solver", [&] {
                             switch (cfg.optimizer.solver) {
                                 case WaveformSolver::kDense: return "dense";
                                 case WaveformSolver::kBlockDiag: return "block";
                                 case WaveformSolver::kConjGrad: return "cg";
                                 default: return "auto";
                             }
                         }()},
                        {"cg_tol", cfg.optimizer.cg_tol},
                        {"cg_max_iters", cfg.optimizer.cg_max_iters}};
    doc["mimo"] = {{"rows", cfg.mimo.array.rows}, {"cols", cfg.mimo.array.cols}};
    doc["performance"] = {{"p_fa", cfg.p_fa},
                          {"n_pulses", cfg.n_pulses},
                          {"snr_db", cfg.snr_db_list},
                          {"eta_list", cfg.eta_list},
                          {"mc_samples", cfg.mc.n_samples},
                          {"mc_seed", cfg.mc.seed}};
    doc["output"] = {{"dir", cfg.out_dir}};
    return doc;
}

}  // namespace

ConfigError::ConfigError(std::vector<Entry> entries)
    : std::runtime_error(join_errors(entries)), entries_(std::move(entries)) {}

RunConfig default_config() { return validate_config(""); }

RunConfig validate_config(const std::string& text) {
    std::string trimmed = text;
    trimmed.erase(std::remove_if(trimmed.begin(), trimmed.end(),
                                 [](unsigned char c) { return std::isspace(c); }),
                  trimmed.end());

    json root = json::object();
    if (!trimmed.empty()) {
        try {
            root = json::parse(text);
        } catch (const json::parse_error& e) {
            fail("<document>", std::string("JSON parse error: ") + e.what());
        }
        if (!root.is_object()) {
            fail("<document>", "top level must be a JSON object");
        }
    }

    RunConfig cfg;
    Checker check(root);
    check.check_top_level(
        {"scenario", "grids", "desired", "optimizer", "mimo", "performance", "output"});

    const json* scenario = check.section(
        "scenario", {"ris_rows", "ris_cols", "ris_spacing_m", "ris_spacing_wavelengths",
                     "num_sources", "source_distance_m", "element_peak_gain",
                     "pulse_duration_s", "bandwidth_hz", "carrier_hz", "power_w"});
    int ris_rows = 10, ris_cols = 10, num_sources = 4;
    double spacing_m = -1.0, spacing_wl = -1.0, source_distance = 0.6, peak_gain = 4.0;
    double pulse = 0.64e-6, bandwidth = 100e6, carrier = 3e9, power = 10.0;
    check.number(scenario, "scenario", "ris_rows", ris_rows, 1.0, 1e4);
    check.number(scenario, "scenario", "ris_cols", ris_cols, 1.0, 1e4);
    check.number(scenario, "scenario", "ris_spacing_m", spacing_m, 0.0, 1e3, true);
    check.number(scenario, "scenario", "ris_spacing_wavelengths", spacing_wl, 0.0, 1e3, true);
    check.number(scenario, "scenario", "num_sources", num_sources, 1.0, 4.0);
    check.number(scenario, "scenario", "source_distance_m", source_distance, 0.0, 1e6, true);
    check.number(scenario, "scenario", "element_peak_gain", peak_gain, 0.0, 1e6, true);
    check.number(scenario, "scenario", "pulse_duration_s", pulse, 0.0, 1.0, true);
    check.number(scenario, "scenario", "bandwidth_hz", bandwidth, 0.0, 1e12, true);
    check.number(scenario, "scenario", "carrier_hz", carrier, 0.0, 1e15, true);
    check.number(scenario, "scenario", "power_w", power, 0.0, 1e9, true);
    if (scenario != nullptr && scenario->contains("ris_spacing_m") &&
        scenario->contains("ris_spacing_wavelengths")) {
        check.error("scenario.ris_spacing_m",
                    "give either ris_spacing_m or ris_spacing_wavelengths, not both");
    }
    if (num_sources == 3) {
        check.error("scenario.num_sources", "quadrant placement supports 1, 2, or 4 sources");
    }
    if (carrier <= bandwidth / 2.0) {
        check.error("scenario.carrier_hz", "carrier must exceed half the bandwidth");
    }
    if (static_cast<int>(bandwidth * pulse + 1e-9) < 1) {
        check.error("scenario.pulse_duration_s", "W*T must give at least one sample");
    }

    const json* grids = check.section("grids", {"num_freq", "num_theta", "num_phi"});
    check.number(grids, "grids", "num_freq", cfg.num_freq, 1.0, 1e6);
    check.number(grids, "grids", "num_theta", cfg.n_theta, 1.0, 1e4);
    check.number(grids, "grids", "num_phi", cfg.n_phi, 1.0, 1e4);

    const json* desired = check.section(
        "desired", {"eta", "radar_band_hz", "radar_box_rad", "comm_band_hz", "comm_box_rad"});
    check.number(desired, "desired", "eta", cfg.eta, 0.0, 1.0);
    std::vector<double> radar_band, comm_band, radar_box, comm_box;
    check.number_list(desired, "desired", "radar_band_hz", radar_band, -1e12, 1e12);
    check.number_list(desired, "desired", "comm_band_hz", comm_band, -1e12, 1e12);
    check.number_list(desired, "desired", "radar_box_rad", radar_box, -kPi / 2, kPi / 2);
    check.number_list(desired, "desired", "comm_box_rad", comm_box, -kPi / 2, kPi / 2);

    const json* optimizer = check.section(
        "optimizer", {"max_outer_iters", "rel_obj_tol", "lambda_bisect_tol",
                      "lambda_bisect_max_iters", "x_inner_sweeps", "seed", "solver", "cg_tol",
                      "cg_max_iters"});
    check.number(optimizer, "optimizer", "max_outer_iters", cfg.optimizer.max_outer_iters, 1.0,
                 1e9);
    check.number(optimizer, "optimizer", "rel_obj_tol", cfg.optimizer.rel_obj_tol, 0.0, 1.0,
                 true);
    check.number(optimizer, "optimizer", "lambda_bisect_tol", cfg.optimizer.lambda_bisect_tol,
                 0.0, 1.0, true);
    check.number(optimizer, "optimizer", "lambda_bisect_max_iters",
                 cfg.optimizer.lambda_bisect_max_iters, 1.0, 1e9);
    check.number(optimizer, "optimizer", "x_inner_sweeps", cfg.optimizer.x_inner_sweeps, 1.0,
                 1e6);
    check.number(optimizer, "optimizer", "seed", cfg.optimizer.seed, 0.0, 1.8e19);
    check.number(optimizer, "optimizer", "cg_tol", cfg.optimizer.cg_tol, 0.0, 1.0, true);
    check.number(optimizer, "optimizer", "cg_max_iters", cfg.optimizer.cg_max_iters, 1.0, 1e9);
    std::string solver_name = "auto";
    check.text(optimizer, "optimizer", "solver", solver_name);
    if (solver_name == "auto") {
        cfg.optimizer.solver = WaveformSolver::kAuto;
    } else if (solver_name == "dense") {
        cfg.optimizer.solver = WaveformSolver::kDense;
    } else if (solver_name == "block") {
        cfg.optimizer.solver = WaveformSolver::kBlockDiag;
    } else if (solver_name == "cg") {
        cfg.optimizer.solver = WaveformSolver::kConjGrad;
    } else {
        check.error("optimizer.solver", "must be one of auto, dense, block, cg");
    }

    const json* mimo = check.section("mimo", {"rows", "cols"});
    int mimo_rows = 10, mimo_cols = 10;
    check.number(mimo, "mimo", "rows", mimo_rows, 1.0, 1e4);
    check.number(mimo, "mimo", "cols", mimo_cols, 1.0, 1e4);

    const json* perf = check.section(
        "performance", {"p_fa", "n_pulses", "snr_db", "eta_list", "mc_samples", "mc_seed"});
    check.number(perf, "performance", "p_fa", cfg.p_fa, 0.0, 1.0, true, true);
    check.number(perf, "performance", "n_pulses", cfg.n_pulses, 1.0, 1e9);
    check.number_list(perf, "performance", "snr_db", cfg.snr_db_list, -200.0, 200.0);
    check.number_list(perf, "performance", "eta_list", cfg.eta_list, 0.0, 1.0);
    check.number(perf, "performance", "mc_samples", cfg.mc.n_samples, 1.0, 2e9);
    check.number(perf, "performance", "mc_seed", cfg.mc.seed, 0.0, 1.8e19);

    const json* output = check.section("output", {"dir"});
    check.text(output, "output", "dir", cfg.out_dir);

    if (!check.ok()) throw ConfigError(check.take());

    // Build the resolved scenario.
    cfg.scene.ris.rows = ris_rows;
    cfg.scene.ris.cols = ris_cols;
    cfg.scene.signal.pulse_duration = pulse;
    cfg.scene.signal.bandwidth = bandwidth;
    cfg.scene.signal.carrier = carrier;
    const double wavelength = kSpeedOfLight / carrier;
    if (spacing_m > 0.0) {
        cfg.scene.ris.spacing = spacing_m;
    } else if (spacing_wl > 0.0) {
        cfg.scene.ris.spacing = spacing_wl * wavelength;
    } else {
        cfg.scene.ris.spacing = 0.5 * wavelength;
    }
    cfg.scene.ris_pattern.peak_gain = peak_gain;
    cfg.scene.source_pattern.peak_gain = peak_gain;
    cfg.scene.sources = SourceSet::behind_quadrants(cfg.scene.ris, num_sources, source_distance);
    cfg.scene.power = power;

    cfg.layout = DesiredLayout::reference(cfg.scene.signal);
    if (radar_band.size() == 2) {
        cfg.layout.radar.f_lo = radar_band[0];
        cfg.layout.radar.f_hi = radar_band[1];
    } else if (!radar_band.empty()) {
        fail("desired.radar_band_hz", "must have exactly 2 entries");
    }
    if (comm_band.size() == 2) {
        cfg.layout.comm.f_lo = comm_band[0];
        cfg.layout.comm.f_hi = comm_band[1];
    } else if (!comm_band.empty()) {
        fail("desired.comm_band_hz", "must have exactly 2 entries");
    }
    auto apply_box = [](const std::vector<double>& v, AngleBox& box) {
        box = {v[0], v[1], v[2], v[3]};
    };
    if (radar_box.size() == 4) {
        apply_box(radar_box, cfg.layout.radar.box);
    } else if (!radar_box.empty()) {
        fail("desired.radar_box_rad", "must have exactly 4 entries");
    }
    if (comm_box.size() == 4) {
        apply_box(comm_box, cfg.layout.comm.box);
    } else if (!comm_box.empty()) {
        fail("desired.comm_box_rad", "must have exactly 4 entries");
    }

    cfg.mimo.array.rows = mimo_rows;
    cfg.mimo.array.cols = mimo_cols;
    cfg.mimo.array.spacing = 0.5 * wavelength;
    cfg.mimo.pattern = cfg.scene.ris_pattern;
    cfg.mimo.signal = cfg.scene.signal;
    cfg.mimo.power = cfg.scene.power;

    try {
        cfg.scene.validate();
        cfg.optimizer.validate();
        cfg.mimo.validate();
    } catch (const std::invalid_argument& e) {
        fail("<resolved>", e.what());
    }

    const json doc = resolved_document(cfg);
    cfg.resolved = doc.dump(2);
    cfg.config_hash = to_hex(fnv1a64(doc.dump()));
    return cfg;
}

}  // namespace risdfrc
