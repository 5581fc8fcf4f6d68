// SPDX-License-Identifier: Apache-2.0
//
// risdfrc - RIS-based dual-function radar-communication transmitter design.

#include "risdfrc/performance.hpp"

#include <cmath>
#include <stdexcept>

#include "risdfrc/quadrature.hpp"

namespace risdfrc {

namespace {

constexpr std::uint64_t kCommStreamSalt = 0x636F6D6D6C696E6BULL;

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

Estimate reduce_mean(const Eigen::VectorXd& samples) {
    Estimate est;
    est.n = samples.size();
    est.value = samples.mean();
    if (samples.size() > 1) {
        const double var =
            (samples.array() - est.value).square().sum() / (samples.size() - 1.0);
        est.std_err = std::sqrt(var / samples.size());
    }
    return est;
}

// Band-integral samples at uniformly drawn directions; optionally paired with
// Exponential(1) target-power draws.
struct RadarSamples {
    Eigen::VectorXd a_sq;
    Eigen::VectorXd integral;
};

RadarSamples collect_radar_samples(const BeamColumnFn& column, const Eigen::VectorXd& freqs,
                                   const SignalParams& sig, const AngleBox& region,
                                   const McConfig& mc) {
    RadarSamples out;
    out.a_sq.resize(mc.n_samples);
    out.integral.resize(mc.n_samples);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < mc.n_samples; ++i) {
        SplitMix64 rng(SplitMix64::substream_key(mc.seed, static_cast<std::uint64_t>(i)));
        const double a = mc.fix_target_power ? 1.0 : -std::log1p(-rng.next_double());
        const double theta = rng.next_uniform(region.theta_lo, region.theta_hi);
        const double phi = rng.next_uniform(region.phi_lo, region.phi_hi);
        out.a_sq[i] = a;
        out.integral[i] = snr_band_integral(column(theta, phi), freqs, sig);
    }
    return out;
}

Eigen::VectorXd collect_comm_samples(const BeamColumnFn& column, const Eigen::VectorXd& freqs,
                                     const SignalParams& sig, const AngleBox& region,
                                     const McConfig& mc) {
    Eigen::VectorXd out(mc.n_samples);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < mc.n_samples; ++i) {
        SplitMix64 rng(SplitMix64::substream_key(mc.seed ^ kCommStreamSalt,
                                                 static_cast<std::uint64_t>(i)));
        const double theta = rng.next_uniform(region.theta_lo, region.theta_hi);
        const double phi = rng.next_uniform(region.phi_lo, region.phi_hi);
        out[i] = snr_band_integral(column(theta, phi), freqs, sig);
    }
    return out;
}

Estimate detection_from_samples(const RadarSamples& samples, const SignalParams& sig,
                                const RadarPerf& perf) {
    Eigen::VectorXd pd(samples.a_sq.size());
    for (Eigen::Index i = 0; i < pd.size(); ++i) {
        pd[i] = detection_prob(
            radar_snr_from_integral(samples.a_sq[i], samples.integral[i], sig, perf), perf.p_fa);
    }
    return reduce_mean(pd);
}

Estimate rate_from_samples(const Eigen::VectorXd& integrals, const SignalParams& sig,
                           const CommPerf& perf) {
    Eigen::VectorXd r(integrals.size());
    for (Eigen::Index i = 0; i < r.size(); ++i) {
        r[i] = rate(comm_snr_from_integral(integrals[i], sig, perf));
    }
    return reduce_mean(r);
}

}  // namespace

void RadarPerf::validate() const {
    require(p_fa > 0.0 && p_fa < 1.0, "radar perf: P_fa must lie in (0, 1)");
    require(n_pulses >= 1, "radar perf: pulse count must be >= 1");
    require(noise_psd > 0.0, "radar perf: noise PSD must be > 0");
    require(sigma_rcs > 0.0 && range > 0.0 && rx_gain > 0.0,
            "radar perf: physical constants must be > 0");
}

void CommPerf::validate() const {
    require(noise_psd > 0.0, "comm perf: noise PSD must be > 0");
    require(range > 0.0 && rx_gain > 0.0, "comm perf: physical constants must be > 0");
}

double snr_band_integral(const Eigen::VectorXd& column, const Eigen::VectorXd& freqs,
                         const SignalParams& sig) {
    require(column.size() == freqs.size(), "snr_band_integral: column/grid size mismatch");
    const double df = sig.bandwidth / static_cast<double>(freqs.size());
    double acc = 0.0;
    for (Eigen::Index k = 0; k < freqs.size(); ++k) {
        const double term = column[k] * kSpeedOfLight / (freqs[k] + sig.carrier);
        acc += term * term;
    }
    return acc * df;
}

double radar_snr_from_integral(double a_sq, double integral, const SignalParams& sig,
                               const RadarPerf& perf) {
    const double four_pi = 4.0 * kPi;
    return perf.n_pulses * a_sq * perf.sigma_rcs * perf.rx_gain * sig.pulse_duration * integral /
           (four_pi * four_pi * four_pi * std::pow(perf.range, 4) * perf.noise_psd);
}

double radar_snr(double a_sq, double theta_t, double phi_t, const DesignVariables& dv,
                 const Scene& scene, const Grids& grids, const RadarPerf& perf) {
    require(a_sq >= 0.0, "radar_snr: |a|^2 must be >= 0");
    Eigen::VectorXd column(grids.num_freqs());
    for (int k = 0; k < grids.num_freqs(); ++k) {
        column[k] = beampattern_value(dv, grids.freqs[k], theta_t, phi_t, scene);
    }
    return radar_snr_from_integral(a_sq, snr_band_integral(column, grids.freqs, scene.signal),
                                   scene.signal, perf);
}

double detection_prob(double snr, double p_fa) {
    require(snr >= 0.0, "detection_prob: snr must be >= 0");
    require(p_fa > 0.0 && p_fa < 1.0, "detection_prob: P_fa must lie in (0, 1)");
    return std::pow(p_fa, 1.0 / (1.0 + snr));
}

double comm_snr_from_integral(double integral, const SignalParams& sig, const CommPerf& perf) {
    const double denom = 4.0 * kPi * perf.range;
    return perf.rx_gain * sig.pulse_duration * integral / (denom * denom * perf.noise_psd);
}

double comm_snr(double theta_u, double phi_u, const DesignVariables& dv, const Scene& scene,
                const Grids& grids, const CommPerf& perf) {
    Eigen::VectorXd column(grids.num_freqs());
    for (int k = 0; k < grids.num_freqs(); ++k) {
        column[k] = beampattern_value(dv, grids.freqs[k], theta_u, phi_u, scene);
    }
    return comm_snr_from_integral(snr_band_integral(column, grids.freqs, scene.signal),
                                  scene.signal, perf);
}

double rate(double snr) {
    require(snr >= 0.0, "rate: snr must be >= 0");
    return std::log2(1.0 + snr);
}

BeamColumnFn beam_column(const DesignVariables& dv, const Scene& scene, const Grids& grids) {
    return [dv, scene, grids](double theta, double phi) {
        Eigen::VectorXd column(grids.num_freqs());
        for (int k = 0; k < grids.num_freqs(); ++k) {
            column[k] = beampattern_value(dv, grids.freqs[k], theta, phi, scene);
        }
        return column;
    };
}

BeamColumnFn mimo_beam_column(const Eigen::VectorXcd& s, const MimoScenario& scene,
                              const Grids& grids) {
    return [s, scene, grids](double theta, double phi) {
        Eigen::VectorXd column(grids.num_freqs());
        for (int k = 0; k < grids.num_freqs(); ++k) {
            column[k] = mimo_beampattern_value(s, grids.freqs[k], theta, phi, scene);
        }
        return column;
    };
}

Estimate average_detection_prob(const BeamColumnFn& column, const Eigen::VectorXd& freqs,
                                const SignalParams& sig, const RadarPerf& perf,
                                const McConfig& mc) {
    perf.validate();
    require(mc.n_samples >= 1, "monte carlo: n_samples must be >= 1");
    return detection_from_samples(collect_radar_samples(column, freqs, sig, perf.region, mc),
                                  sig, perf);
}

Estimate average_detection_prob(const DesignVariables& dv, const Scene& scene, const Grids& grids,
                                const RadarPerf& perf, const McConfig& mc) {
    return average_detection_prob(beam_column(dv, scene, grids), grids.freqs, scene.signal, perf,
                                  mc);
}

Estimate average_rate(const BeamColumnFn& column, const Eigen::VectorXd& freqs,
                      const SignalParams& sig, const CommPerf& perf, const McConfig& mc) {
    perf.validate();
    require(mc.n_samples >= 1, "monte carlo: n_samples must be >= 1");
    return rate_from_samples(collect_comm_samples(column, freqs, sig, perf.region, mc), sig,
                             perf);
}

Estimate average_rate(const DesignVariables& dv, const Scene& scene, const Grids& grids,
                      const CommPerf& perf, const McConfig& mc) {
    return average_rate(beam_column(dv, scene, grids), grids.freqs, scene.signal, perf, mc);
}

double quad_detection_prob(const BeamColumnFn& column, const Eigen::VectorXd& freqs,
                           const SignalParams& sig, const RadarPerf& perf,
                           const QuadConfig& quad) {
    perf.validate();
    const QuadratureRule theta_rule =
        gauss_legendre(quad.n_angle, perf.region.theta_lo, perf.region.theta_hi);
    const QuadratureRule phi_rule =
        gauss_legendre(quad.n_angle, perf.region.phi_lo, perf.region.phi_hi);
    const QuadratureRule a_rule = gauss_laguerre(quad.n_laguerre);
    const double area = (perf.region.theta_hi - perf.region.theta_lo) *
                        (perf.region.phi_hi - perf.region.phi_lo);
    require(area > 0.0, "quad_detection_prob: averaging region must have positive area");

    double acc = 0.0;
    for (int it = 0; it < quad.n_angle; ++it) {
        for (int ip = 0; ip < quad.n_angle; ++ip) {
            const double integral = snr_band_integral(
                column(theta_rule.nodes[it], phi_rule.nodes[ip]), freqs, sig);
            double inner = 0.0;
            for (int q = 0; q < quad.n_laguerre; ++q) {
                inner += a_rule.weights[q] *
                         detection_prob(radar_snr_from_integral(a_rule.nodes[q], integral, sig,
                                                                perf),
                                        perf.p_fa);
            }
            acc += theta_rule.weights[it] * phi_rule.weights[ip] * inner;
        }
    }
    return acc / area;
}

double quad_rate(const BeamColumnFn& column, const Eigen::VectorXd& freqs,
                 const SignalParams& sig, const CommPerf& perf, const QuadConfig& quad) {
    perf.validate();
    const QuadratureRule theta_rule =
        gauss_legendre(quad.n_angle, perf.region.theta_lo, perf.region.theta_hi);
    const QuadratureRule phi_rule =
        gauss_legendre(quad.n_angle, perf.region.phi_lo, perf.region.phi_hi);
    const double area = (perf.region.theta_hi - perf.region.theta_lo) *
                        (perf.region.phi_hi - perf.region.phi_lo);
    require(area > 0.0, "quad_rate: averaging region must have positive area");

    double acc = 0.0;
    for (int it = 0; it < quad.n_angle; ++it) {
        for (int ip = 0; ip < quad.n_angle; ++ip) {
            const double integral = snr_band_integral(
                column(theta_rule.nodes[it], phi_rule.nodes[ip]), freqs, sig);
            acc += theta_rule.weights[it] * phi_rule.weights[ip] *
                   rate(comm_snr_from_integral(integral, sig, perf));
        }
    }
    return acc / area;
}

double calibrate_noise_psd(const DesiredPattern& desired_at_extreme, double target_snr_db,
                           CalibrationTarget which, const SignalParams& sig,
                           const Eigen::VectorXd& freqs, const RadarPerf& radar,
                           const CommPerf& comm) {
    const double target = std::pow(10.0, target_snr_db / 10.0);
    const BeamRegion& beam = which == CalibrationTarget::kRadar
                                 ? desired_at_extreme.radar_region()
                                 : desired_at_extreme.comm_region();
    const double theta_c = beam.box.theta_center();
    const double phi_c = beam.box.phi_center();

    Eigen::VectorXd column(freqs.size());
    for (Eigen::Index k = 0; k < freqs.size(); ++k) {
        column[k] = desired_value(desired_at_extreme, freqs[k], theta_c, phi_c);
    }
    const double integral = snr_band_integral(column, freqs, sig);
    if (!(integral > 0.0)) {
        throw std::domain_error("calibrate_noise_psd: desired beam has zero energy at center");
    }

    if (which == CalibrationTarget::kRadar) {
        RadarPerf unit = radar;
        unit.noise_psd = 1.0;
        return radar_snr_from_integral(1.0, integral, sig, unit) / target;
    }
    CommPerf unit = comm;
    unit.noise_psd = 1.0;
    return comm_snr_from_integral(integral, sig, unit) / target;
}

AngleBox radar_averaging_region(const DesiredPattern& desired) {
    return desired.radar_region().box.shrink_half();
}

AngleBox comm_averaging_region(const DesiredPattern& desired) {
    return desired.comm_region().box.shrink_half();
}

std::vector<OperatingPoint> operating_characteristic(const TradeoffSettings& settings,
                                                     Architecture arch, const Scene& scene,
                                                     const MimoScenario* mimo,
                                                     const Grids& grids, const OptimConfig& cfg) {
    require(!settings.eta_list.empty() && !settings.snr_db_list.empty(),
            "operating_characteristic: eta and SNR lists must be nonempty");
    if (arch == Architecture::kMimo) {
        require(mimo != nullptr, "operating_characteristic: missing MIMO scenario");
    }
    const SignalParams& sig = scene.signal;

    // Nominal-SNR calibration references: all power to one function, B = D.
    const DesiredPattern desired_radar_all = build_desired(1.0, scene, grids);
    const DesiredPattern desired_comm_all = build_desired(0.0, scene, grids);

    std::vector<OperatingPoint> points;
    for (const double eta : settings.eta_list) {
        const DesiredPattern desired = build_desired(eta, scene, grids);

        BeamColumnFn column;
        if (arch == Architecture::kRis) {
            auto [dv, trace] = run_bcd(desired, scene, grids, cfg);
            column = beam_column(dv, scene, grids);
        } else {
            auto [s, trace] = design_mimo(desired, *mimo, grids, cfg);
            column = mimo_beam_column(s, *mimo, grids);
        }

        RadarPerf radar = settings.radar;
        radar.region = radar_averaging_region(desired);
        CommPerf comm = settings.comm;
        comm.region = comm_averaging_region(desired);

        radar.noise_psd = 1.0;  // placeholder; set per nominal SNR below
        const RadarSamples radar_samples =
            collect_radar_samples(column, grids.freqs, sig, radar.region, settings.mc);
        const Eigen::VectorXd comm_samples =
            collect_comm_samples(column, grids.freqs, sig, comm.region, settings.mc);

        for (const double snr_db : settings.snr_db_list) {
            radar.noise_psd = calibrate_noise_psd(desired_radar_all, snr_db,
                                                  CalibrationTarget::kRadar, sig, grids.freqs,
                                                  radar, comm);
            comm.noise_psd = calibrate_noise_psd(desired_comm_all, snr_db,
                                                 CalibrationTarget::kComm, sig, grids.freqs,
                                                 radar, comm);
            const Estimate pd = detection_from_samples(radar_samples, sig, radar);
            const Estimate r = rate_from_samples(comm_samples, sig, comm);

            OperatingPoint pt;
            pt.eta = eta;
            pt.rate = r.value;
            pt.rate_stderr = r.std_err;
            pt.pd = pd.value;
            pt.pd_stderr = pd.std_err;
            pt.nominal_snr_db = snr_db;
            pt.arch = arch == Architecture::kRis ? "ris" : "mimo";
            points.push_back(pt);
        }
    }
    return points;
}

}  // namespace risdfrc
