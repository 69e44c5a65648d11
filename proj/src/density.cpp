#include "vibronic/density.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vibronic {

namespace {

constexpr double kEdgeDensityWarn = 1e-8;

// Fills chi[0..n) with the oscillator eigenfunctions at q via the upward
// two-term recurrence, which is forward-stable for all i.
void oscillator_basis(double q, int n, std::vector<double>& chi) {
    chi.resize(n);
    const double gauss =
        std::exp(-0.5 * q * q) / std::pow(std::numbers::pi, 0.25);
    chi[0] = gauss;
    if (n == 1) return;
    chi[1] = std::sqrt(2.0) * q * gauss;
    for (int i = 1; i + 1 < n; ++i)
        chi[i + 1] = std::sqrt(2.0 / (i + 1)) * q * chi[i] -
                     std::sqrt(static_cast<double>(i) / (i + 1)) * chi[i - 1];
}

// Density of a coefficient row at coordinate q on the axis of V(Q). The
// matrix assembly displaces the wells with the opposite sign convention,
// so the basis is evaluated at the mirrored coordinate; this keeps every
// reported density overlayable on the potential curves.
double density_at(std::span<const double> state, int n, double q,
                  std::vector<double>& chi) {
    oscillator_basis(-q, n, chi);
    double a1 = 0.0, a2 = 0.0;
    for (int i = 0; i < n; ++i) {
        a1 += state[i] * chi[i];
        a2 += state[n + i] * chi[i];
    }
    return a1 * a1 + a2 * a2;
}

void check_grid(std::span<const double> grid) {
    if (grid.size() < 3)
        throw std::invalid_argument("density grid needs at least 3 points");
    for (size_t g = 1; g < grid.size(); ++g)
        if (!(grid[g] > grid[g - 1]))
            throw std::invalid_argument("density grid must be ascending");
}

}  // namespace

const char* modality_name(Modality modality) {
    return modality == Modality::Bimodal ? "bimodal" : "unimodal";
}

double ho_wavefunction(int i, double q) {
    if (i < 0) throw std::invalid_argument("quantum number must be >= 0");
    std::vector<double> chi;
    oscillator_basis(q, i + 1, chi);
    return chi[i];
}

std::vector<double> linear_grid(double lo, double hi, int points) {
    if (points < 2 || !(hi > lo))
        throw std::invalid_argument("grid needs hi > lo and >= 2 points");
    std::vector<double> g(points);
    const double step = (hi - lo) / (points - 1);
    for (int i = 0; i < points; ++i) g[i] = lo + step * i;
    g.back() = hi;
    return g;
}

std::vector<double> default_density_grid(const ModelParams& params) {
    const double half_width = params.delta + 6.0;
    return linear_grid(-half_width, half_width, 2001);
}

DensityProfile profile(std::span<const double> state, int n,
                       std::span<const double> grid, double prominence_tol) {
    if (n < 1 || state.size() != static_cast<size_t>(2 * n))
        throw std::invalid_argument("coefficient row must have 2n entries");
    check_grid(grid);
    if (!(prominence_tol > 0.0))
        throw std::invalid_argument("prominence tolerance must be positive");

    DensityProfile p;
    p.grid.assign(grid.begin(), grid.end());
    p.values.resize(grid.size());
    std::vector<double> chi;
    for (size_t g = 0; g < grid.size(); ++g)
        p.values[g] = density_at(state, n, grid[g], chi);

    double global_max = 0.0;
    for (const double v : p.values) global_max = std::max(global_max, v);

    // Interior extrema by strict comparison with both neighbours.
    std::vector<size_t> maxima;
    for (size_t g = 1; g + 1 < p.values.size(); ++g) {
        if (p.values[g] > p.values[g - 1] && p.values[g] > p.values[g + 1]) {
            maxima.push_back(g);
            p.maxima_q.push_back(p.grid[g]);
        } else if (p.values[g] < p.values[g - 1] &&
                   p.values[g] < p.values[g + 1]) {
            p.minima_q.push_back(p.grid[g]);
        }
    }

    // Bimodal: some pair of maxima rises above the deepest valley between
    // them by more than the prominence cutoff.
    const double cutoff = prominence_tol * global_max;
    bool bimodal = false;
    for (size_t a = 0; a + 1 < maxima.size() && !bimodal; ++a) {
        for (size_t b = a + 1; b < maxima.size() && !bimodal; ++b) {
            double valley = p.values[maxima[a]];
            for (size_t g = maxima[a] + 1; g < maxima[b]; ++g)
                valley = std::min(valley, p.values[g]);
            bimodal = p.values[maxima[a]] - valley > cutoff &&
                      p.values[maxima[b]] - valley > cutoff;
        }
    }
    p.modality = bimodal ? Modality::Bimodal : Modality::Unimodal;
    p.narrow_grid_warning = p.values.front() > kEdgeDensityWarn ||
                            p.values.back() > kEdgeDensityWarn;
    return p;
}

Modality classify_region(const ModelParams& params,
                         const VibronicSolution& solution) {
    if (solution.state_count() < 1)
        throw std::invalid_argument("solution has no states");
    const std::vector<double> grid = default_density_grid(params);
    return profile(solution.state(0), solution.n_basis, grid).modality;
}

std::vector<SurfaceSample> sample_surfaces(const ModelParams& params,
                                           const VibronicSolution& solution,
                                           std::span<const double> grid) {
    if (solution.state_count() < 1)
        throw std::invalid_argument("solution has no states");
    check_grid(grid);
    const int n = solution.n_basis;
    const std::span<const double> ground = solution.state(0);
    std::vector<SurfaceSample> samples(grid.size());
    std::vector<double> chi;
    for (size_t g = 0; g < grid.size(); ++g) {
        SurfaceSample& s = samples[g];
        s.q = grid[g];
        const auto [v1, v2] = diabatic_potentials(params, s.q);
        s.diabat1 = v1;
        s.diabat2 = v2;
        const auto [gs, es] = bo_energies(params, s.q);
        s.e_gs = gs;
        s.e_es = es;
        s.ground_density = density_at(ground, n, s.q, chi);
    }
    return samples;
}

}  // namespace vibronic
