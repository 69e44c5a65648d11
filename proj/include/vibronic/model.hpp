#pragma once

#include <optional>
#include <string>
#include <utility>

namespace vibronic {

/// Parameters of the two-state, one-mode coupled harmonic diabatic model.
///
/// The potential matrix in the localized diabatic basis is
///
///   V(Q) = [ hw/2 (Q+delta)^2      J                    ]
///          [ J                     hw/2 (Q-delta)^2 + E0 ]
///
/// with a common kinetic term -hw/2 d^2/dQ^2 on the diagonal. Q is the
/// dimensionless vibrational coordinate; all energies (e0, hbar_omega, j)
/// share the unit named by unit_label.
struct ModelParams {
    double e0 = 0.0;          // well asymmetry, >= 0 in canonical form
    double hbar_omega = 1.0;  // vibrational quantum, > 0
    double j = 0.0;           // resonance coupling, <= 0 in canonical form
    double delta = 0.0;       // dimensionless displacement, >= 0
    std::string unit_label = "dimensionless";

    /// Canonical constructor. Normalizes j to j <= 0 (observables depend on
    /// |j| only) and e0 to e0 >= 0 by swapping the diabat labels (a Q -> -Q
    /// relabeling that moves the energy zero to the lower well's minimum).
    /// Throws std::invalid_argument for hbar_omega <= 0 or delta < 0.
    static ModelParams canonical(double e0, double hbar_omega, double j,
                                 double delta, std::string unit_label);

    /// Same normalization, but parametrized by the reorganization energy
    /// lambda = 2 hw delta^2 instead of the displacement.
    static ModelParams from_reorganization(double e0, double hbar_omega,
                                           double j, double lambda,
                                           std::string unit_label);
};

/// Quantities derived from ModelParams. The ratios r1, r2 are absent when
/// their denominator vanishes (lambda = 0 or delta_e = 0); requesting an
/// absent ratio through the checked accessors throws.
struct DerivedQuantities {
    double lambda = 0.0;      // reorganization energy, 2 hw delta^2
    double delta_e = 0.0;     // electronic spacing sqrt(lambda^2 + 4 j^2)
    double huang_rhys = 0.0;  // lambda / hw = 2 delta^2
    std::optional<double> r1; // 2|J| / lambda
    std::optional<double> r2; // hw / delta_e
    double r3 = 0.0;          // e0 / hw

    double ratio_r1() const;  // throws UndefinedRatio-style error if absent
    double ratio_r2() const;
};

/// One point of the three-parameter dimensionless space (2|J|/lambda,
/// hw/deltaE, E0/hw). r1 = 0 is allowed only with the J = 0 convention,
/// in which case lambda = delta_e.
struct DimensionlessPoint {
    double r1 = 0.0;
    double r2 = 1.0;
    double r3 = 0.0;
};

/// Computes lambda, delta_e and the dimensionless ratios from params.
DerivedQuantities derive(const ModelParams& params);

/// Inverts the dimensionless parametrization at a given energy scale:
/// delta_e = hw/r2, lambda = delta_e/sqrt(1+r1^2), |J| = r1 lambda/2 with
/// J <= 0, e0 = r3 hw. Round-trips through derive() at relative 1e-12.
ModelParams from_dimensionless(const DimensionlessPoint& point,
                               double hbar_omega,
                               std::string unit_label = "dimensionless");

/// Born-Oppenheimer adiabatic surfaces: the eigenvalues of V(Q),
/// returned as (ground, excited) with ground <= excited.
std::pair<double, double> bo_energies(const ModelParams& params, double q);

/// Diagonal entries of V(Q): the two diabatic potentials.
std::pair<double, double> diabatic_potentials(const ModelParams& params,
                                              double q);

}  // namespace vibronic
