#include "vibronic/diabatization.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vibronic {

namespace {

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

// RMS deviation between the rotated uncoupled ladder and the exact levels.
double ladder_rms(const ModelParams& params, std::span<const double> exact,
                  double theta_deg) {
    const auto diabats = rotated_diabats(params, deg_to_rad(theta_deg));
    const std::vector<double> ladder =
        diabatic_ladder(diabats, static_cast<int>(exact.size()));
    double acc = 0.0;
    for (size_t s = 0; s < exact.size(); ++s) {
        const double d = ladder[s] - exact[s];
        acc += d * d;
    }
    return std::sqrt(acc / exact.size());
}

}  // namespace

std::pair<RotatedDiabat, RotatedDiabat> rotated_diabats(
    const ModelParams& params, double theta_rad) {
    if (!(params.hbar_omega > 0.0) || !(params.delta >= 0.0))
        throw std::invalid_argument("invalid model parameters");
    if (!(theta_rad >= 0.0) || !(theta_rad <= 0.5 * std::numbers::pi))
        throw std::invalid_argument("theta must lie in [0, pi/2]");

    const double lambda = 2.0 * params.hbar_omega * params.delta * params.delta;
    const double sin_t = std::sin(theta_rad);
    const double cos_t = std::cos(theta_rad);
    const double sin_2t = std::sin(2.0 * theta_rad);
    const double cos_2t = std::cos(2.0 * theta_rad);
    const double common = 0.25 * lambda * sin_2t * sin_2t;

    RotatedDiabat d1;
    d1.q_min = -params.delta * cos_2t;
    d1.e_min = common + params.e0 * sin_t * sin_t - params.j * sin_2t;
    d1.omega = params.hbar_omega;

    RotatedDiabat d2;
    d2.q_min = params.delta * cos_2t;
    d2.e_min = common + params.e0 * cos_t * cos_t + params.j * sin_2t;
    d2.omega = params.hbar_omega;
    return {d1, d2};
}

std::vector<double> diabatic_ladder(
    const std::pair<RotatedDiabat, RotatedDiabat>& diabats, int count) {
    if (count < 1) throw std::invalid_argument("level count must be >= 1");
    std::vector<double> levels;
    levels.reserve(count);
    int i1 = 0, i2 = 0;
    for (int s = 0; s < count; ++s) {
        const double e1 = diabats.first.e_min + (i1 + 0.5) * diabats.first.omega;
        const double e2 =
            diabats.second.e_min + (i2 + 0.5) * diabats.second.omega;
        if (e1 <= e2) {
            levels.push_back(e1);
            ++i1;
        } else {
            levels.push_back(e2);
            ++i2;
        }
    }
    return levels;
}

ThetaFit fit_theta(const ModelParams& params, const VibronicSolution& exact,
                   int count) {
    if (count < 1) throw std::invalid_argument("level count must be >= 1");
    if (exact.state_count() < count)
        throw std::invalid_argument(
            "exact solution carries fewer levels than the fit needs");
    const std::span<const double> levels(exact.energies.data(),
                                         static_cast<size_t>(count));

    // Coarse half-degree scan keeps the global picture; strict < keeps the
    // smallest angle on ties.
    double best_theta = 0.0;
    double best_rms = ladder_rms(params, levels, 0.0);
    for (int k = 1; k <= 90; ++k) {
        const double theta = 0.5 * k;
        const double rms = ladder_rms(params, levels, theta);
        if (rms < best_rms) {
            best_rms = rms;
            best_theta = theta;
        }
    }

    // Golden-section refinement to 0.01 degrees around the coarse winner.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = std::max(0.0, best_theta - 0.5);
    double hi = std::min(45.0, best_theta + 0.5);
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = ladder_rms(params, levels, x1);
    double f2 = ladder_rms(params, levels, x2);
    while (hi - lo > 0.01) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = ladder_rms(params, levels, x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = ladder_rms(params, levels, x2);
        }
    }
    for (const auto& [theta, rms] :
         {std::pair{x1, f1}, std::pair{x2, f2},
          std::pair{0.5 * (lo + hi), ladder_rms(params, levels, 0.5 * (lo + hi))}}) {
        if (rms < best_rms || (rms == best_rms && theta < best_theta)) {
            best_rms = rms;
            best_theta = theta;
        }
    }

    ThetaFit fit;
    fit.theta_deg = best_theta;
    fit.rms = best_rms;
    fit.levels_compared = count;
    return fit;
}

}  // namespace vibronic
