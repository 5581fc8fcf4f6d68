// SPDX-License-Identifier: Apache-2.0
//
// risdfrc - RIS-based dual-function radar-communication transmitter design.
//
// Command-line harness: config validation, beampattern design, cut export,
// and the detection-vs-rate tradeoff sweep. All numeric outputs are
// deterministic for a fixed config hash and seed; thread count is selected
// through OMP_NUM_THREADS and does not change any result.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "risdfrc/config.hpp"
#include "risdfrc/io.hpp"
#include "risdfrc/mimo.hpp"
#include "risdfrc/optimizer.hpp"
#include "risdfrc/performance.hpp"

namespace {

using namespace risdfrc;

std::string read_file(const std::string& path) {
    if (path.empty()) return "";
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string number_tag(double v) {
    std::ostringstream os;
    os << v;
    std::string s = os.str();
    for (auto& c : s) {
        if (c == '.') c = 'p';
        if (c == '-') c = 'm';
    }
    return s;
}

// Paper-scale problems are gated behind --full so that casual runs stay cheap.
bool is_full_scale(const RunConfig& cfg, bool with_mimo) {
    const long grid_points = static_cast<long>(cfg.num_freq) * cfg.n_theta * cfg.n_phi;
    if (grid_points > 20000) return true;
    if (cfg.scene.num_elements() > 36) return true;
    if (with_mimo && cfg.mimo.num_antennas() > 36) return true;
    return false;
}

void require_full_flag(const RunConfig& cfg, bool full, bool with_mimo) {
    if (is_full_scale(cfg, with_mimo) && !full) {
        throw std::runtime_error(
            "this configuration is paper-scale (large grids or arrays); pass --full to run "
            "it, or use a reduced profile such as configs/desk.json");
    }
}

HeaderEntries base_header(const RunConfig& cfg, std::uint64_t seed) {
    return {{"config_hash", cfg.config_hash}, {"seed", std::to_string(seed)}};
}

int cmd_validate(const std::string& config_path) {
    const RunConfig cfg = validate_config(read_file(config_path));
    std::cout << "configuration OK\n"
              << "config_hash: " << cfg.config_hash << "\n"
              << "resolved:\n"
              << cfg.resolved << "\n";
    return 0;
}

int cmd_design(const std::string& config_path, std::optional<double> eta_override,
               std::optional<std::uint64_t> seed_override, const std::string& arch,
               const std::string& out_dir_override, const std::vector<double>& cut_mhz,
               bool full, bool deterministic) {
    RunConfig cfg = validate_config(read_file(config_path));
    if (eta_override) cfg.eta = *eta_override;
    if (seed_override) cfg.optimizer.seed = *seed_override;
    if (!(cfg.eta >= 0.0 && cfg.eta <= 1.0)) {
        throw std::runtime_error("--eta must lie in [0, 1]");
    }
    const bool mimo = arch == "mimo";
    require_full_flag(cfg, full, mimo);

    const std::string out_dir = out_dir_override.empty() ? cfg.out_dir : out_dir_override;
    std::filesystem::create_directories(out_dir);
    const auto file = [&](const std::string& name) {
        return (std::filesystem::path(out_dir) / name).string();
    };

    const Grids grids = cfg.make_grids();
    const DesiredPattern desired = cfg.make_desired(grids);

    HeaderEntries header = base_header(cfg, cfg.optimizer.seed);
    header.emplace_back("eta", format_double(cfg.eta));
    header.emplace_back("arch", mimo ? "mimo" : "ris");

    const auto t0 = std::chrono::steady_clock::now();
    ObjectiveTrace trace;
    BeampatternMap map;
    if (mimo) {
        auto [s, tr] = design_mimo(desired, cfg.mimo, grids, cfg.optimizer);
        trace = std::move(tr);
        map = mimo_beampattern_map(s, grids, cfg.mimo);
        export_complex_vector(file("waveform.txt"), s, header);
    } else {
        auto [dv, tr] = run_bcd(desired, cfg.scene, grids, cfg.optimizer);
        trace = std::move(tr);
        map = beampattern_map(dv, grids, cfg.scene);
        export_complex_vector(file("waveform.txt"), dv.s, header);
        export_complex_vector(file("ris_phases.txt"), dv.x, header);
    }
    const double wall_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    export_trace(file("trace.txt"), trace, header);
    export_beampattern(file("beampattern.txt"), map, header);

    std::vector<std::string> cut_files;
    for (const double mhz : cut_mhz) {
        const std::string name = "cut_f" + number_tag(mhz) + "mhz.txt";
        try {
            export_beampattern_cut(file(name), map, mhz * 1e6, true, header);
            cut_files.push_back(name);
        } catch (const std::invalid_argument& e) {
            std::cerr << "skipping cut at " << mhz << " MHz: " << e.what() << "\n";
        }
    }

    HeaderEntries meta = header;
    meta.emplace_back("deterministic", deterministic ? "true" : "true (always)");
    meta.emplace_back("wall_time_s", format_double(wall_s));
    meta.emplace_back("iterations", std::to_string(trace.iterations));
    meta.emplace_back("converged", trace.converged ? "true" : "false");
    meta.emplace_back("final_objective", format_double(trace.final_objective));
    write_meta(file("meta.json"), meta);

    std::cout << "design written to " << out_dir << " (objective "
              << trace.final_objective << ", " << trace.iterations << " iterations, "
              << (trace.converged ? "converged" : "iteration cap") << ")\n";
    for (const auto& name : cut_files) std::cout << "  cut: " << name << "\n";
    return 0;
}

int cmd_cut(const std::string& map_path, double freq_mhz, bool normalize,
            const std::string& out_dir) {
    const BeampatternMap map = import_beampattern(map_path);
    std::filesystem::create_directories(out_dir);
    const Table source = read_table(map_path);
    HeaderEntries header;
    for (const auto& key : {"config_hash", "seed", "eta", "arch"}) {
        const std::string value = source.header_value(key);
        if (!value.empty()) header.emplace_back(key, value);
    }
    const std::string name = "cut_f" + number_tag(freq_mhz) + "mhz.txt";
    const std::string path = (std::filesystem::path(out_dir) / name).string();
    export_beampattern_cut(path, map, freq_mhz * 1e6, normalize, header);
    std::cout << "cut written to " << path << "\n";
    return 0;
}

int cmd_tradeoff(const std::string& config_path, const std::vector<double>& snr_db,
                 const std::vector<double>& eta_list, const std::string& arch,
                 const std::string& out_dir_override, bool full) {
    RunConfig cfg = validate_config(read_file(config_path));
    if (!snr_db.empty()) cfg.snr_db_list = snr_db;
    if (!eta_list.empty()) cfg.eta_list = eta_list;
    const bool with_mimo = arch == "mimo" || arch == "both";
    require_full_flag(cfg, full, with_mimo);

    const std::string out_dir = out_dir_override.empty() ? cfg.out_dir : out_dir_override;
    std::filesystem::create_directories(out_dir);

    const Grids grids = cfg.make_grids();
    TradeoffSettings settings;
    settings.eta_list = cfg.eta_list;
    settings.snr_db_list = cfg.snr_db_list;
    settings.radar.p_fa = cfg.p_fa;
    settings.radar.n_pulses = cfg.n_pulses;
    settings.mc = cfg.mc;

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<OperatingPoint> points;
    if (arch == "ris" || arch == "both") {
        const auto ris = operating_characteristic(settings, Architecture::kRis, cfg.scene,
                                                  nullptr, grids, cfg.optimizer);
        points.insert(points.end(), ris.begin(), ris.end());
    }
    if (with_mimo) {
        const auto mim = operating_characteristic(settings, Architecture::kMimo, cfg.scene,
                                                  &cfg.mimo, grids, cfg.optimizer);
        points.insert(points.end(), mim.begin(), mim.end());
    }
    const double wall_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    for (const double snr : cfg.snr_db_list) {
        std::vector<OperatingPoint> rows;
        for (const auto& p : points) {
            if (p.nominal_snr_db == snr) rows.push_back(p);
        }
        HeaderEntries header = base_header(cfg, cfg.optimizer.seed);
        header.emplace_back("mc_seed", std::to_string(cfg.mc.seed));
        header.emplace_back("mc_samples", std::to_string(cfg.mc.n_samples));
        header.emplace_back("nominal_snr_db", format_double(snr));
        const std::string stem = "tradeoff_snr" + number_tag(snr) + "db";
        const std::string path = (std::filesystem::path(out_dir) / (stem + ".txt")).string();
        export_tradeoff(path, rows, header);

        HeaderEntries meta = header;
        meta.emplace_back("wall_time_s", format_double(wall_s));
        meta.emplace_back("arch", arch);
        write_meta((std::filesystem::path(out_dir) / (stem + ".meta.json")).string(), meta);
        std::cout << "tradeoff table written to " << path << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "RIS-based DFRC transmitter design: beampattern matching and the "
        "detection-vs-rate operating characteristic"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;

    auto* validate = app.add_subcommand("validate", "Validate a config file and print the "
                                                    "resolved parameters");
    validate->add_option("--config", config_path, "JSON config file (omit for defaults)");

    auto* design = app.add_subcommand(
        "design", "Jointly design waveforms and RIS phases for one power split");
    std::optional<double> eta_override;
    std::optional<std::uint64_t> seed_override;
    std::string arch = "ris";
    std::vector<double> cut_mhz{-37.5, 37.5};
    bool full = false;
    bool deterministic = true;
    design->add_option("--config", config_path, "JSON config file (omit for defaults)");
    design->add_option("--eta", eta_override, "Power split in [0,1] (overrides config)");
    design->add_option("--seed", seed_override, "Initialization seed (overrides config)");
    design->add_option("--arch", arch, "Architecture: ris or mimo")
        ->check(CLI::IsMember({"ris", "mimo"}));
    design->add_option("--cut-mhz", cut_mhz,
                       "Frequency cuts (MHz) exported as normalized-power tables");
    design->add_option("--out-dir", out_dir, "Output directory (overrides config)");
    design->add_flag("--full", full, "Allow paper-scale configurations");
    design->add_flag("--deterministic,!--no-deterministic", deterministic,
                     "Recorded in metadata; results are deterministic either way");

    auto* cut = app.add_subcommand("cut", "Export one frequency cut from a saved beampattern");
    std::string map_path;
    double freq_mhz = 0.0;
    bool normalize = false;
    cut->add_option("--map", map_path, "beampattern.txt written by design")->required();
    cut->add_option("--freq-mhz", freq_mhz, "Cut frequency in MHz (must be on the grid)")
        ->required();
    cut->add_flag("--normalize", normalize, "Export the normalized power beampattern in dB");
    cut->add_option("--out-dir", out_dir, "Output directory")->required();

    auto* tradeoff = app.add_subcommand(
        "tradeoff", "Sweep eta and emit detection-vs-rate operating characteristics");
    std::vector<double> snr_db;
    std::vector<double> eta_list;
    std::string tr_arch = "ris";
    bool tr_full = false;
    tradeoff->add_option("--config", config_path, "JSON config file (omit for defaults)");
    tradeoff->add_option("--snr-db", snr_db, "Nominal SNR values in dB (overrides config)");
    tradeoff->add_option("--eta-list", eta_list, "Power splits to sweep (overrides config)");
    tradeoff->add_option("--arch", tr_arch, "Architecture: ris, mimo, or both")
        ->check(CLI::IsMember({"ris", "mimo", "both"}));
    tradeoff->add_option("--out-dir", out_dir, "Output directory (overrides config)");
    tradeoff->add_flag("--full", tr_full, "Allow paper-scale configurations");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(config_path);
        if (design->parsed()) {
            return cmd_design(config_path, eta_override, seed_override, arch, out_dir, cut_mhz,
                              full, deterministic);
        }
        if (cut->parsed()) return cmd_cut(map_path, freq_mhz, normalize, out_dir);
        if (tradeoff->parsed()) {
            return cmd_tradeoff(config_path, snr_db, eta_list, tr_arch, out_dir, tr_full);
        }
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
