#pragma once

#include <span>
#include <vector>

#include "vibronic/hamiltonian.hpp"
#include "vibronic/model.hpp"

namespace vibronic {

enum class Modality { Unimodal, Bimodal };

/// "unimodal" / "bimodal", as written by the serializers.
const char* modality_name(Modality modality);

/// Vibrational probability density of one eigenstate on a coordinate grid,
/// n(Q) = |sum_i c(1,i) chi_i(Q)|^2 + |sum_i c(2,i) chi_i(Q)|^2,
/// with its interior local maxima/minima and the resulting modality call.
/// All densities are reported on the coordinate axis of the potential
/// matrix V(Q), so they overlay directly on the surface scans.
struct DensityProfile {
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<double> maxima_q;          // interior local maxima, ascending
    std::vector<double> minima_q;          // interior local minima, ascending
    Modality modality = Modality::Unimodal;
    bool narrow_grid_warning = false;      // density not negligible at edges
};

/// Harmonic-oscillator eigenfunction chi_i(q) for unit dimensionless
/// frequency, evaluated by the stable upward recurrence
/// chi_{i+1} = sqrt(2/(i+1)) q chi_i - sqrt(i/(i+1)) chi_{i-1}.
double ho_wavefunction(int i, double q);

/// Uniform grid of `points` values covering [lo, hi].
std::vector<double> linear_grid(double lo, double hi, int points);

/// Default density grid for a model: 2001 points on [-(delta+6), delta+6].
std::vector<double> default_density_grid(const ModelParams& params);

/// Evaluates the density of a coefficient row (2n entries, unit norm) on an
/// ascending grid. A point is bimodal when it has >= 2 interior maxima whose
/// prominence above the deepest interior minimum between them exceeds
/// prominence_tol times the global maximum.
DensityProfile profile(std::span<const double> state, int n,
                       std::span<const double> grid,
                       double prominence_tol = 1e-3);

/// Modality of the ground state on the default grid.
Modality classify_region(const ModelParams& params,
                         const VibronicSolution& solution);

/// One row of a potential/density scan: the two diabatic potentials, the
/// two adiabatic surfaces and the ground-state density at a coordinate.
struct SurfaceSample {
    double q = 0.0;
    double diabat1 = 0.0;
    double diabat2 = 0.0;
    double e_gs = 0.0;
    double e_es = 0.0;
    double ground_density = 0.0;
};

/// Surfaces plus ground density on a grid, sharing one coordinate axis.
std::vector<SurfaceSample> sample_surfaces(const ModelParams& params,
                                           const VibronicSolution& solution,
                                           std::span<const double> grid);

}  // namespace vibronic
