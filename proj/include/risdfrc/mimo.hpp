// SPDX-License-Identifier: Apache-2.0
//
// risdfrc - RIS-based dual-function radar-communication transmitter design.
//
// Fully digital planar-array baseline: every antenna carries its own waveform
// and the matching problem is solved with the same lifted least-squares
// alternation, minus the RIS phase block.

#pragma once

#include <utility>

#include <Eigen/Dense>

#include "risdfrc/desired.hpp"
#include "risdfrc/optimizer.hpp"
#include "risdfrc/response.hpp"

namespace risdfrc {

/// 10x10 half-wavelength array sharing the reference signal parameters.
MimoScenario mimo_reference();

/// Complex far-field response v^H diag(Gamma) E(f) s at one point; s is
/// sample-major with blocks of M' antennas.
cplx mimo_grid_response(const Eigen::VectorXcd& s, double f, double theta, double phi,
                        const MimoScenario& scene);

/// Amplitude beampattern of the fully digital array.
double mimo_beampattern_value(const Eigen::VectorXcd& s, double f, double theta, double phi,
                              const MimoScenario& scene);

/// Beampattern over the full grids.
BeampatternMap mimo_beampattern_map(const Eigen::VectorXcd& s, const Grids& grids,
                                    const MimoScenario& scene);

/// Waveform-only alternation for the fully digital array; returns the
/// designed waveform and its objective trace.
std::pair<Eigen::VectorXcd, ObjectiveTrace> design_mimo(const DesiredPattern& desired,
                                                        const MimoScenario& scene,
                                                        const Grids& grids,
                                                        const OptimConfig& cfg);

}  // namespace risdfrc
