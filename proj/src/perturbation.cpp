#include "vibronic/perturbation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace vibronic {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_coupling(const ModelParams& params) {
    if (params.j == 0.0)
        throw std::invalid_argument("estimate undefined at j = 0");
    if (!(params.hbar_omega > 0.0) || !(params.delta >= 0.0))
        throw std::invalid_argument("invalid model parameters");
}

}  // namespace

double franck_condon_overlap(const ModelParams& params) {
    if (!(params.hbar_omega > 0.0) || !(params.delta >= 0.0))
        throw std::invalid_argument("invalid model parameters");
    // lambda / 2hw reduces exactly to delta^2.
    return std::exp(-params.delta * params.delta);
}

double rho_pm_localized(const ModelParams& params) {
    require_coupling(params);
    const double f00 = franck_condon_overlap(params);
    const double two_j = 2.0 * std::abs(params.j);
    double offset_ratio;  // e0 / (2|J| F00), robust to F00 underflow
    if (f00 > 0.0)
        offset_ratio = params.e0 / (two_j * f00);
    else
        offset_ratio =
            params.e0 > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    const double imbalance2 =
        std::isinf(offset_ratio) ? 1.0
                                 : 1.0 - (1.0 - f00) / (1.0 + offset_ratio);
    return std::sqrt(imbalance2);
}

double e0_fragility_threshold(const ModelParams& params,
                              ThresholdVariant variant) {
    require_coupling(params);
    const double two_j = 2.0 * std::abs(params.j);
    const double exponent = params.delta * params.delta;
    return variant == ThresholdVariant::AsPrinted ? two_j * std::exp(exponent)
                                                  : two_j * std::exp(-exponent);
}

double rho_pm_delocalized(const ModelParams& params) {
    if (!(params.hbar_omega > 0.0) || !(params.delta >= 0.0))
        throw std::invalid_argument("invalid model parameters");
    const double hw = params.hbar_omega;
    const double two_j = 2.0 * std::abs(params.j);
    if (hw == two_j)
        throw std::domain_error(
            "delocalized imbalance estimate has a pole at hw = 2|J|");
    const double lambda = 2.0 * hw * params.delta * params.delta;
    if (lambda == 0.0) return 1.0;
    const double detuning = hw - two_j;
    const double offset2 =
        params.e0 == 0.0 ? 0.0 : params.e0 * params.e0 / (16.0 * params.j * params.j);
    return 1.0 - hw * lambda / (2.0 * detuning * detuning * (1.0 + offset2));
}

double entropy_delocalized_approx(const ModelParams& params) {
    require_coupling(params);
    const DerivedQuantities d = derive(params);
    if (!(d.delta_e > 0.0))
        throw std::domain_error("estimate undefined at deltaE = 0");
    const double coupling_ratio = d.lambda / (2.0 * std::abs(params.j));
    const double rho = 0.25 * coupling_ratio *
                       (params.hbar_omega / d.delta_e) *
                       (1.0 + 0.5 * coupling_ratio);
    return rho > 0.0 ? -rho * std::log2(rho) : 0.0;
}

double resonance_metric(const ModelParams& params) {
    if (!(params.hbar_omega > 0.0))
        throw std::invalid_argument("hbar_omega must be positive");
    const double a = params.e0 / params.hbar_omega;
    const double b = 2.0 * params.j / params.hbar_omega;
    return a * a + b * b;
}

PerturbativeEstimates perturbative_estimates(const ModelParams& params,
                                             ThresholdVariant variant) {
    PerturbativeEstimates est;
    est.f00 = franck_condon_overlap(params);
    est.resonance_metric = resonance_metric(params);
    if (params.j != 0.0) {
        est.rho_pm_localized = vibronic::rho_pm_localized(params);
        est.e0_fragility_threshold =
            vibronic::e0_fragility_threshold(params, variant);
        est.entropy_delocalized = entropy_delocalized_approx(params);
    } else {
        est.rho_pm_localized = kNaN;
        est.e0_fragility_threshold = kNaN;
        est.entropy_delocalized = kNaN;
    }
    if (params.hbar_omega != 2.0 * std::abs(params.j))
        est.rho_pm_delocalized = vibronic::rho_pm_delocalized(params);
    else
        est.rho_pm_delocalized = kNaN;
    return est;
}

}  // namespace vibronic
