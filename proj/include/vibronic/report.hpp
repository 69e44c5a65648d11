#pragma once

#include <string>
#include <vector>

#include "vibronic/density.hpp"
#include "vibronic/diabatization.hpp"
#include "vibronic/entanglement.hpp"
#include "vibronic/hamiltonian.hpp"
#include "vibronic/model.hpp"
#include "vibronic/perturbation.hpp"

namespace vibronic {

/// Everything the single-point pipeline produces: converged eigenpairs,
/// per-state entanglement, ground-state modality, best-fit rotation angle
/// and the closed-form limit estimates, all in the unit of `params`.
struct PointReport {
    ModelParams params;
    DerivedQuantities derived;
    int n_used = 0;
    bool converged = false;
    std::vector<double> energies;              // lowest `states`
    std::vector<EntanglementResult> states;    // same order
    Modality modality = Modality::Unimodal;
    ThetaFit theta;
    PerturbativeEstimates estimates;
};

/// Runs solve -> entanglement -> modality -> angle fit -> estimates for one
/// parameter set. `states` is the number of reported eigenstates (>= 1);
/// internally at least 10 levels are converged so the angle fit always sees
/// a full ladder.
PointReport solve_point(
    const ModelParams& params, double tol = 1e-6, int states = 2,
    ThresholdVariant variant = ThresholdVariant::F00Consistent);

/// JSON rendering of a report (NaN -> null).
std::string report_to_json(const PointReport& report);

}  // namespace vibronic
