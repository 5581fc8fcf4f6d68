// SPDX-License-Identifier: Apache-2.0
//
// risdfrc - RIS-based dual-function radar-communication transmitter design.
//
// ISAC performance evaluation: radar detection probability for a Swerling-1
// target, communication rate, nominal-SNR calibration, and the operating
// characteristic obtained by sweeping the power split eta.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "risdfrc/desired.hpp"
#include "risdfrc/mimo.hpp"
#include "risdfrc/optimizer.hpp"
#include "risdfrc/scene.hpp"

namespace risdfrc {

/// Beampattern column |B(f_k; theta, phi)| over the frequency grid at one direction.
using BeamColumnFn = std::function<Eigen::VectorXd(double theta, double phi)>;

/// Radar receiver model. Constants without scenario values default to 1 and
/// are absorbed by the nominal-SNR calibration.
struct RadarPerf {
    double p_fa = 1e-6;
    int n_pulses = 1;          // N_p, coherent integration multiplier
    double noise_psd = 1.0;    // sigma^2_{n,r}, W/Hz (set by calibrate_radar_noise)
    double sigma_rcs = 1.0;
    double range = 1.0;        // r_t
    double rx_gain = 1.0;      // G_rx,r
    AngleBox region;           // target-angle averaging region

    void validate() const;
};

/// Communication receiver model; same absorption convention.
struct CommPerf {
    double noise_psd = 1.0;  // sigma^2_{n,u}
    double range = 1.0;      // r_u
    double rx_gain = 1.0;    // G_rx,u
    AngleBox region;         // user-angle averaging region

    void validate() const;
};

struct McConfig {
    int n_samples = 100000;
    std::uint64_t seed = 20240001;
    bool fix_target_power = false;  // pin |a|^2 = 1 (degenerate-average checks)
};

struct QuadConfig {
    int n_angle = 24;     // Gauss-Legendre order per angular axis
    int n_laguerre = 48;  // Gauss-Laguerre order for the target-power average
};

/// Monte Carlo estimate with its standard error.
struct Estimate {
    double value = 0.0;
    double std_err = 0.0;
    std::int64_t n = 0;
};

/// One point of the operating characteristic.
struct OperatingPoint {
    double eta = 0.0;
    double rate = 0.0;        // bits per channel use
    double rate_stderr = 0.0;
    double pd = 0.0;
    double pd_stderr = 0.0;
    double nominal_snr_db = 0.0;
    std::string arch;  // "ris" or "mimo"
};

/// Midpoint Riemann sum of (B(f) c / (f + f_c))^2 over the frequency grid.
double snr_band_integral(const Eigen::VectorXd& column, const Eigen::VectorXd& freqs,
                         const SignalParams& sig);

/// Radar SNR for a target-power realization a_sq at the given band integral.
double radar_snr_from_integral(double a_sq, double integral, const SignalParams& sig,
                               const RadarPerf& perf);

/// Radar SNR at a target direction, evaluating the beampattern of (dv, scene).
double radar_snr(double a_sq, double theta_t, double phi_t, const DesignVariables& dv,
                 const Scene& scene, const Grids& grids, const RadarPerf& perf);

/// Swerling-1 detection probability P_fa^{1/(1+snr)}.
double detection_prob(double snr, double p_fa);

/// Communication SNR from a band integral / at a user direction.
double comm_snr_from_integral(double integral, const SignalParams& sig, const CommPerf& perf);
double comm_snr(double theta_u, double phi_u, const DesignVariables& dv, const Scene& scene,
                const Grids& grids, const CommPerf& perf);

/// Gaussian-channel rate log2(1 + snr), bits per channel use.
double rate(double snr);

/// Beam-column adapters.
BeamColumnFn beam_column(const DesignVariables& dv, const Scene& scene, const Grids& grids);
BeamColumnFn mimo_beam_column(const Eigen::VectorXcd& s, const MimoScenario& scene,
                              const Grids& grids);

/// Monte Carlo average of the detection probability: |a|^2 ~ Exponential(1),
/// target direction uniform on perf.region.
Estimate average_detection_prob(const BeamColumnFn& column, const Eigen::VectorXd& freqs,
                                const SignalParams& sig, const RadarPerf& perf,
                                const McConfig& mc);
Estimate average_detection_prob(const DesignVariables& dv, const Scene& scene, const Grids& grids,
                                const RadarPerf& perf, const McConfig& mc);

/// Monte Carlo average rate over the user region.
Estimate average_rate(const BeamColumnFn& column, const Eigen::VectorXd& freqs,
                      const SignalParams& sig, const CommPerf& perf, const McConfig& mc);
Estimate average_rate(const DesignVariables& dv, const Scene& scene, const Grids& grids,
                      const CommPerf& perf, const McConfig& mc);

/// Deterministic quadrature counterparts (Gauss-Laguerre x angular tensor grid).
double quad_detection_prob(const BeamColumnFn& column, const Eigen::VectorXd& freqs,
                           const SignalParams& sig, const RadarPerf& perf,
                           const QuadConfig& quad = {});
double quad_rate(const BeamColumnFn& column, const Eigen::VectorXd& freqs,
                 const SignalParams& sig, const CommPerf& perf, const QuadConfig& quad = {});

enum class CalibrationTarget { kRadar, kComm };

/// Noise PSD such that the nominal SNR - evaluated with B = D at the beam
/// center, unit target power - equals target_snr_db. For kRadar pass the
/// desired pattern at eta = 1, for kComm at eta = 0.
double calibrate_noise_psd(const DesiredPattern& desired_at_extreme, double target_snr_db,
                           CalibrationTarget which, const SignalParams& sig,
                           const Eigen::VectorXd& freqs, const RadarPerf& radar,
                           const CommPerf& comm);

/// Default averaging regions: centered sub-boxes of the desired beams with
/// half the side length.
AngleBox radar_averaging_region(const DesiredPattern& desired);
AngleBox comm_averaging_region(const DesiredPattern& desired);

enum class Architecture { kRis, kMimo };

struct TradeoffSettings {
    std::vector<double> eta_list;
    std::vector<double> snr_db_list;
    RadarPerf radar;  // noise_psd ignored; set per nominal SNR
    CommPerf comm;
    McConfig mc;
};

/// Designs one beampattern per eta and evaluates (rate, P_d) for every
/// nominal SNR; deterministic given the seeds in cfg and settings.
std::vector<OperatingPoint> operating_characteristic(const TradeoffSettings& settings,
                                                     Architecture arch, const Scene& scene,
                                                     const MimoScenario* mimo,
                                                     const Grids& grids, const OptimConfig& cfg);

}  // namespace risdfrc
