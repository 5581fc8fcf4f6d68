// SPDX-License-Identifier: Apache-2.0
//
// risdfrc - RIS-based dual-function radar-communication transmitter design.

#include "risdfrc/desired.hpp"

#include <cmath>
#include <stdexcept>

namespace risdfrc {

void BeamRegion::validate() const {
    if (!(f_lo < f_hi)) throw std::invalid_argument("beam region: empty frequency band");
    if (!(box.theta_lo <= box.theta_hi && box.phi_lo <= box.phi_hi)) {
        throw std::invalid_argument("beam region: empty angle box");
    }
    if (height < 0.0) throw std::invalid_argument("beam region: negative height");
}

bool region_contains(const BeamRegion& region, double f, double theta, double phi) {
    return f >= region.f_lo && f <= region.f_hi && region.box.contains(theta, phi);
}

DesiredLayout DesiredLayout::reference(const SignalParams& sig) {
    const double w = sig.bandwidth;
    DesiredLayout layout;
    layout.radar.f_lo = -w / 2.0;
    layout.radar.f_hi = -w / 4.0;
    layout.radar.box = {0.0, kPi / 8.0, 0.0, kPi / 8.0};
    layout.comm.f_lo = -w / 2.0;
    layout.comm.f_hi = w / 2.0;
    layout.comm.box = {-kPi / 4.0, -kPi / 8.0, -kPi / 4.0, -kPi / 8.0};
    return layout;
}

double radar_beam_height(double eta, const SignalParams& sig) {
    return std::sqrt(1024.0 * eta / (sig.bandwidth * std::sin(kPi / 8.0)));
}

double comm_beam_height(double eta, const SignalParams& sig) {
    return std::sqrt(256.0 * (1.0 - eta) /
                     (sig.bandwidth * (std::sqrt(2.0) - std::sin(kPi / 8.0))));
}

DesiredPattern build_desired(double eta, const Scene& scene, const Grids& grids) {
    return build_desired(eta, scene, grids, DesiredLayout::reference(scene.signal));
}

DesiredPattern build_desired(double eta, const Scene& scene, const Grids& grids,
                             const DesiredLayout& layout) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("build_desired: eta must lie in [0, 1]");
    }
    DesiredPattern out;
    out.eta = eta;
    out.regions = {layout.radar, layout.comm};
    out.regions[0].height = radar_beam_height(eta, scene.signal);
    out.regions[1].height = comm_beam_height(eta, scene.signal);
    for (auto& r : out.regions) r.validate();

    const int k_count = grids.num_freqs();
    const int l_count = grids.num_angles();
    out.d = Eigen::MatrixXd::Zero(k_count, l_count);
    out.w = Eigen::MatrixXd::Ones(k_count, l_count);
    for (int k = 0; k < k_count; ++k) {
        for (int l = 0; l < l_count; ++l) {
            for (const auto& r : out.regions) {
                if (region_contains(r, grids.freqs[k], grids.theta[l], grids.phi[l])) {
                    out.d(k, l) += r.height;
                }
            }
        }
    }
    return out;
}

double desired_value(const DesiredPattern& desired, double f, double theta, double phi) {
    double acc = 0.0;
    for (const auto& r : desired.regions) {
        if (region_contains(r, f, theta, phi)) acc += r.height;
    }
    return acc;
}

}  // namespace risdfrc
