#include "vibronic/model.hpp"

#include <cmath>
#include <stdexcept>

namespace vibronic {

namespace {

void check_scales(double hbar_omega, double delta) {
    if (!(hbar_omega > 0.0))
        throw std::invalid_argument("hbar_omega must be positive");
    if (!(delta >= 0.0))
        throw std::invalid_argument("delta must be non-negative");
}

}  // namespace

ModelParams ModelParams::canonical(double e0, double hbar_omega, double j,
                                   double delta, std::string unit_label) {
    check_scales(hbar_omega, delta);
    if (!std::isfinite(e0) || !std::isfinite(j))
        throw std::invalid_argument("e0 and j must be finite");
    ModelParams p;
    p.e0 = std::abs(e0);      // e0 < 0 just swaps the diabat labels
    p.hbar_omega = hbar_omega;
    p.j = -std::abs(j);       // the sign of j is a basis gauge
    p.delta = delta;
    p.unit_label = std::move(unit_label);
    return p;
}

ModelParams ModelParams::from_reorganization(double e0, double hbar_omega,
                                             double j, double lambda,
                                             std::string unit_label) {
    if (!(lambda >= 0.0))
        throw std::invalid_argument("lambda must be non-negative");
    check_scales(hbar_omega, 0.0);
    return canonical(e0, hbar_omega, j, std::sqrt(lambda / (2.0 * hbar_omega)),
                     std::move(unit_label));
}

double DerivedQuantities::ratio_r1() const {
    if (!r1)
        throw std::domain_error("r1 = 2|J|/lambda is undefined at lambda = 0");
    return *r1;
}

double DerivedQuantities::ratio_r2() const {
    if (!r2)
        throw std::domain_error("r2 = hw/deltaE is undefined at deltaE = 0");
    return *r2;
}

DerivedQuantities derive(const ModelParams& params) {
    check_scales(params.hbar_omega, params.delta);
    DerivedQuantities d;
    d.lambda = 2.0 * params.hbar_omega * params.delta * params.delta;
    d.delta_e = std::hypot(d.lambda, 2.0 * params.j);
    d.huang_rhys = 2.0 * params.delta * params.delta;
    if (d.lambda > 0.0) d.r1 = 2.0 * std::abs(params.j) / d.lambda;
    if (d.delta_e > 0.0) d.r2 = params.hbar_omega / d.delta_e;
    d.r3 = params.e0 / params.hbar_omega;
    return d;
}

ModelParams from_dimensionless(const DimensionlessPoint& point,
                               double hbar_omega, std::string unit_label) {
    if (!(hbar_omega > 0.0))
        throw std::invalid_argument("hbar_omega must be positive");
    if (!(point.r1 >= 0.0) || !(point.r2 > 0.0) || !(point.r3 >= 0.0))
        throw std::invalid_argument(
            "dimensionless point needs r1 >= 0, r2 > 0, r3 >= 0");
    const double delta_e = hbar_omega / point.r2;
    const double lambda = delta_e / std::sqrt(1.0 + point.r1 * point.r1);
    ModelParams p;
    p.e0 = point.r3 * hbar_omega;
    p.hbar_omega = hbar_omega;
    p.j = -0.5 * point.r1 * lambda;
    p.delta = std::sqrt(lambda / (2.0 * hbar_omega));
    p.unit_label = std::move(unit_label);
    return p;
}

std::pair<double, double> diabatic_potentials(const ModelParams& params,
                                              double q) {
    const double half_hw = 0.5 * params.hbar_omega;
    const double v11 = half_hw * (q + params.delta) * (q + params.delta);
    const double v22 =
        half_hw * (q - params.delta) * (q - params.delta) + params.e0;
    return {v11, v22};
}

std::pair<double, double> bo_energies(const ModelParams& params, double q) {
    const auto [v11, v22] = diabatic_potentials(params, q);
    const double mean = 0.5 * (v11 + v22);
    const double split = std::hypot(0.5 * (v11 - v22), params.j);
    return {mean - split, mean + split};
}

}  // namespace vibronic
