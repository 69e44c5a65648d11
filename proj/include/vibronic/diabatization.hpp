#pragma once

#include <utility>
#include <vector>

#include "vibronic/hamiltonian.hpp"
#include "vibronic/model.hpp"

namespace vibronic {

/// A harmonic diabatic potential after rotating the electronic basis:
/// e(Q) = omega/2 (Q - q_min)^2 + e_min. Rotation by theta mixes the two
/// localized diabats; the curvature omega is invariant.
struct RotatedDiabat {
    double q_min = 0.0;
    double e_min = 0.0;
    double omega = 1.0;
};

/// Diagonal entries of R(theta) V(Q) R(theta)^T, each exactly harmonic:
///   q_min = -/+ delta cos(2 theta)
///   e_min = lambda/4 sin^2(2 theta) + e0 sin^2/cos^2(theta) -/+ j sin(2 theta)
/// (upper sign: first diabat). theta is in radians, restricted to
/// [0, pi/2]; theta = 0 recovers the localized pair, theta = pi/4 the
/// fully mixed one.
std::pair<RotatedDiabat, RotatedDiabat> rotated_diabats(
    const ModelParams& params, double theta_rad);

/// Lowest `count` levels of the two uncoupled harmonic ladders
/// e_min + (i + 1/2) omega, merged ascending (first diabat wins ties).
std::vector<double> diabatic_ladder(
    const std::pair<RotatedDiabat, RotatedDiabat>& diabats, int count);

/// Result of fitting the rotation angle against exact levels.
struct ThetaFit {
    double theta_deg = 0.0;   // best angle in degrees, in [0, 45]
    double rms = 0.0;         // level-energy RMS deviation at theta_deg
    int levels_compared = 0;
};

/// Finds the rotation angle whose uncoupled-ladder spectrum best matches
/// the exact lowest `count` levels (RMS over levels). Coarse 0.5-degree
/// scan over [0, 45] degrees refined by golden-section search to 0.01
/// degrees; ties resolve to the smaller angle.
ThetaFit fit_theta(const ModelParams& params, const VibronicSolution& exact,
                   int count = 10);

}  // namespace vibronic
