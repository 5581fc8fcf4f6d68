// SPDX-License-Identifier: Apache-2.0
//
// risdfrc - RIS-based dual-function radar-communication transmitter design.
//
// Desired two-beam space-frequency pattern: one radar beam over the lower
// quarter of the band and one communication beam over the full band, with the
// power split between them controlled by eta in [0, 1].

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "risdfrc/common.hpp"
#include "risdfrc/scene.hpp"

namespace risdfrc {

/// One desired beam: a closed frequency band times a closed angular box with a
/// constant amplitude height.
struct BeamRegion {
    double f_lo = 0.0;
    double f_hi = 0.0;
    AngleBox box;
    double height = 0.0;

    void validate() const;
};

/// True iff f lies in the region's band and (theta, phi) in its box
/// (boundaries included).
bool region_contains(const BeamRegion& region, double f, double theta, double phi);

/// Target amplitudes D and weights w on the K x L grid.
struct DesiredPattern {
    Eigen::MatrixXd d;  // K x L amplitudes
    Eigen::MatrixXd w;  // K x L weights
    double eta = 0.5;
    std::vector<BeamRegion> regions;  // regions[0] radar, regions[1] communication

    const BeamRegion& radar_region() const { return regions.at(0); }
    const BeamRegion& comm_region() const { return regions.at(1); }
};

/// Beam boxes and bands of the reference scenario (heights depend on eta and
/// are filled in by build_desired).
struct DesiredLayout {
    BeamRegion radar;  // band [-W/2, -W/4], angles [0, pi/8]^2
    BeamRegion comm;   // band [-W/2, W/2], angles [-pi/4, -pi/8]^2

    static DesiredLayout reference(const SignalParams& sig);
};

/// Radar beam amplitude sqrt(1024*eta / (W*sin(pi/8))).
double radar_beam_height(double eta, const SignalParams& sig);

/// Communication beam amplitude sqrt(256*(1-eta) / (W*(sqrt(2) - sin(pi/8)))).
double comm_beam_height(double eta, const SignalParams& sig);

/// Builds the desired pattern for a power split eta on the given grids, with
/// unit weights. Throws std::invalid_argument for eta outside [0, 1].
DesiredPattern build_desired(double eta, const Scene& scene, const Grids& grids);

/// Same, with custom beam boxes/bands (heights still follow the eta formulas).
DesiredPattern build_desired(double eta, const Scene& scene, const Grids& grids,
                             const DesiredLayout& layout);

/// Analytic evaluation of the desired amplitude at an arbitrary point (the sum
/// of the heights of all regions containing it).
double desired_value(const DesiredPattern& desired, double f, double theta, double phi);

}  // namespace risdfrc
