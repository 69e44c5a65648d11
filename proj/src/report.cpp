#include "vibronic/report.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace vibronic {

PointReport solve_point(const ModelParams& params, double tol, int states,
                        ThresholdVariant variant) {
    if (states < 1)
        throw std::invalid_argument("state count must be >= 1");
    PointReport r;
    r.params = params;
    r.derived = derive(params);
    // Converge at least ten levels so the rotation-angle fit always sees a
    // full ladder, however few states the caller reports.
    const int levels = std::max(states, 10);
    const VibronicSolution sol = auto_solve(params, levels, tol);
    r.n_used = sol.n_used;
    r.converged = sol.converged;
    r.energies.assign(sol.energies.begin(), sol.energies.begin() + states);
    r.states.reserve(states);
    for (int s = 0; s < states; ++s)
        r.states.push_back(analyze(sol.state(s), sol.n_basis, s));
    r.modality = classify_region(params, sol);
    r.theta = fit_theta(params, sol, 10);
    r.estimates = perturbative_estimates(params, variant);
    return r;
}

std::string report_to_json(const PointReport& report) {
    nlohmann::json j;
    j["params"] = {{"e0", report.params.e0},
                   {"hbar_omega", report.params.hbar_omega},
                   {"j", report.params.j},
                   {"delta", report.params.delta},
                   {"unit", report.params.unit_label}};
    nlohmann::json derived = {{"lambda", report.derived.lambda},
                              {"delta_e", report.derived.delta_e},
                              {"huang_rhys", report.derived.huang_rhys},
                              {"r3", report.derived.r3}};
    derived["r1"] = report.derived.r1 ? nlohmann::json(*report.derived.r1)
                                      : nlohmann::json();
    derived["r2"] = report.derived.r2 ? nlohmann::json(*report.derived.r2)
                                      : nlohmann::json();
    j["derived"] = derived;
    j["n_used"] = report.n_used;
    j["converged"] = report.converged;
    j["energies"] = report.energies;
    nlohmann::json states = nlohmann::json::array();
    for (const EntanglementResult& s : report.states)
        states.push_back({{"state", s.state_index},
                          {"entropy", s.entropy},
                          {"rho", s.rho},
                          {"rho_pm", s.rho_pm}});
    j["states"] = states;
    j["modality"] = modality_name(report.modality);
    j["theta_fit"] = {{"theta_opt_deg", report.theta.theta_deg},
                      {"rms", report.theta.rms},
                      {"levels_compared", report.theta.levels_compared}};
    // Non-finite estimate entries (undefined formulas) serialize as null.
    j["perturbative_estimates"] = {
        {"f00", report.estimates.f00},
        {"rho_pm_localized", report.estimates.rho_pm_localized},
        {"e0_fragility_threshold", report.estimates.e0_fragility_threshold},
        {"rho_pm_delocalized", report.estimates.rho_pm_delocalized},
        {"entropy_delocalized", report.estimates.entropy_delocalized},
        {"resonance_metric", report.estimates.resonance_metric}};
    return j.dump(2);
}

}  // namespace vibronic
