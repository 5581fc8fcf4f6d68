// SPDX-License-Identifier: Apache-2.0
//
// risdfrc - RIS-based dual-function radar-communication transmitter design.
//
// Run configuration: a JSON document with nested sections (scenario, grids,
// desired, optimizer, mimo, performance, output). Every field has a default
// equal to the reference scenario; unknown keys are rejected.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "risdfrc/desired.hpp"
#include "risdfrc/optimizer.hpp"
#include "risdfrc/performance.hpp"
#include "risdfrc/scene.hpp"

namespace risdfrc {

/// Validation failure with one entry per offending field.
class ConfigError : public std::runtime_error {
  public:
    struct Entry {
        std::string path;
        std::string message;
    };

    explicit ConfigError(std::vector<Entry> entries);
    const std::vector<Entry>& entries() const { return entries_; }

  private:
    std::vector<Entry> entries_;
};

/// Fully resolved run configuration.
struct RunConfig {
    Scene scene;
    int num_freq = 64;
    int n_theta = 36;
    int n_phi = 36;
    double eta = 0.5;
    DesiredLayout layout;
    OptimConfig optimizer;
    MimoScenario mimo;
    double p_fa = 1e-6;
    int n_pulses = 1;
    std::vector<double> snr_db_list{5.0, 10.0, 15.0, 20.0, 30.0};
    std::vector<double> eta_list{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    McConfig mc;
    std::string out_dir = "out";

    std::string config_hash;  // FNV-1a 64 over the canonical resolved document
    std::string resolved;     // canonical resolved JSON text

    Grids make_grids() const { return Grids::regular(scene.signal, num_freq, n_theta, n_phi); }
    DesiredPattern make_desired(const Grids& grids) const {
        return build_desired(eta, scene, grids, layout);
    }
};

/// Parses and validates a config document; empty text means all defaults.
/// Throws ConfigError listing every problem (path + message).
RunConfig validate_config(const std::string& text);

/// The all-defaults configuration.
RunConfig default_config();

}  // namespace risdfrc
