#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "vibronic/density.hpp"
#include "vibronic/model.hpp"

namespace vibronic {

/// Grid specification for a parameter-space sweep. Axis values are sorted
/// ascending on validation; rows are emitted in lexicographic (r3, r2, r1)
/// order, r1 fastest.
struct SweepSpec {
    std::vector<double> r1_values;
    std::vector<double> r2_values;
    std::vector<double> r3_values;
    double tol = 1e-6;
    int states = 2;

    /// 41 log-spaced points on [0.01, 100] for r1 and r2;
    /// r3 in {0, 0.01, 0.1, 1}.
    static SweepSpec default_grid();

    void validate_and_normalize();  // throws on empty/non-positive axes
};

/// One solved grid point, everything in units of hbar_omega = 1.
struct SweepRow {
    double r1 = 0.0;
    double r2 = 0.0;
    double r3 = 0.0;
    int n_used = 0;
    bool converged = false;
    double e0_level = 0.0;
    double e1_level = 0.0;
    double s0 = 0.0;
    double s1 = 0.0;
    double rho0 = 0.0;
    double rho1 = 0.0;
    Modality modality = Modality::Unimodal;
    double theta_opt_deg = 0.0;
};

/// `n` geometrically spaced values on [lo, hi] (endpoints exact).
std::vector<double> log_spaced(double lo, double hi, int n);

/// Solves every grid point with a bounded worker pool. Row order and
/// content are independent of `threads` (results land by index); any
/// worker exception is rethrown on the calling thread after join.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads);

/// CSV with the fixed header
/// r1,r2,r3,n_used,converged,e0_level,e1_level,s0,s1,rho0,rho1,modality,theta_opt_deg
/// Floats carry 9 significant digits; converged is true/false and modality
/// unimodal/bimodal. Byte-stable for identical inputs.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Same table as a JSON document with a meta block (tool, version, grid,
/// tolerance) and one object per row, keyed like the CSV columns.
std::string sweep_to_json(const SweepSpec& spec,
                          const std::vector<SweepRow>& rows);

}  // namespace vibronic
