#pragma once

#include "vibronic/model.hpp"

namespace vibronic {

/// Which closed form to use for the asymmetry scale beyond which a small
/// well offset destroys ground-state entanglement in the localized limit.
/// AsPrinted uses 2|J| exp(+lambda/2hw); F00Consistent uses
/// 2|J| exp(-lambda/2hw), i.e. the tunneling matrix element 2|J| F00 that
/// the surrounding derivation implies. They differ by the sign of the
/// exponent; F00Consistent is the default and matches the numerically
/// observed collapse scale.
enum class ThresholdVariant { AsPrinted, F00Consistent };

/// Ground-vibrational Franck-Condon overlap of the two displaced wells,
/// F00 = exp(-lambda / 2hw) = exp(-delta^2).
double franck_condon_overlap(const ModelParams& params);

/// Localized limit (2|J| << lambda): population imbalance of the lowest
/// doublet, rho_pm = sqrt(1 - (1 - F00) / (1 + e0 / (2|J| F00))).
/// Throws if j = 0.
double rho_pm_localized(const ModelParams& params);

/// Asymmetry scale at which rho_pm_localized predicts the entanglement
/// collapse, in the chosen variant. Throws if j = 0.
double e0_fragility_threshold(const ModelParams& params,
                              ThresholdVariant variant);

/// Delocalized limit (2|J| >> lambda): rho_pm of the ground state,
/// 1 - hw lambda / (2 (hw - 2|J|)^2 (1 + e0^2 / 16 j^2)).
/// Throws at the resonance pole hw = 2|J| where the expression diverges.
double rho_pm_delocalized(const ModelParams& params);

/// Weak-coupling estimate of the ground-state entropy in the delocalized
/// limit: S = -rho log2 rho with
/// rho = 1/4 (lambda/2|J|) (hw/deltaE) (1 + 1/2 lambda/2|J|).
/// Throws if j = 0.
double entropy_delocalized_approx(const ModelParams& params);

/// (e0/hw)^2 + (2j/hw)^2: values << 1 place the level spacing of the two
/// wells near resonance, where vibronic mixing (and entanglement) survives
/// the e0 detuning.
double resonance_metric(const ModelParams& params);

/// All closed-form estimates for one parameter set. Fields whose formula
/// is undefined for the given parameters (j = 0, or the delocalized pole)
/// are NaN rather than an error so the bundle stays usable in reports.
struct PerturbativeEstimates {
    double f00 = 1.0;
    double rho_pm_localized = 1.0;
    double e0_fragility_threshold = 0.0;
    double rho_pm_delocalized = 1.0;
    double entropy_delocalized = 0.0;
    double resonance_metric = 0.0;
};

PerturbativeEstimates perturbative_estimates(
    const ModelParams& params,
    ThresholdVariant variant = ThresholdVariant::F00Consistent);

}  // namespace vibronic
