#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "vibronic/model.hpp"

namespace vibronic {

/// Truncation of the product basis |electronic k> |oscillator i>,
/// i = 0 .. size-1 per electronic state (matrix order is 2*size).
struct BasisSpec {
    int size = 32;
};

/// Eigenstates of the vibronic Hamiltonian in the product basis.
///
/// Coefficient rows are ordered like the flattened basis: entries [0, n)
/// belong to electronic state 1, entries [n, 2n) to electronic state 2,
/// each indexed by oscillator quantum number. Rows are unit-norm and
/// energies are nondecreasing, measured from the lower diabat's minimum
/// (the same zero as bo_energies).
struct VibronicSolution {
    int n_basis = 0;                       // oscillator functions per state
    int n_used = 0;                        // same as n_basis; kept explicit
    bool converged = false;                // set by auto_solve
    std::vector<double> energies;          // lowest m, ascending
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>
        coefficients;                      // m x 2n, one state per row

    int state_count() const { return static_cast<int>(energies.size()); }
    std::span<const double> state(int s) const;
    double gap01() const;                  // energies[1] - energies[0]
};

/// Assembles the 2n x 2n Hamiltonian matrix in physical units. Within each
/// oscillator ladder the only off-diagonal elements couple |i> and |i+1>
/// (the displacement is linear in Q); the two ladders are linked by the
/// constant J on matching quantum numbers. The harmonic zero-point ladder
/// starts at hw/2; the overall constant lambda/4 relative to the potential
/// zero of V(Q) is deliberately left out here and restored by solve().
Eigen::MatrixXd build_matrix(const ModelParams& params, const BasisSpec& basis);

/// Diagonalizes the model in a fixed basis and returns the lowest `states`
/// eigenpairs. Internally works in units of hbar_omega for conditioning,
/// special-cases j = 0 by solving the two uncoupled ladders separately
/// (guaranteeing exact product eigenstates under degeneracy), shifts
/// energies by +lambda/4 onto the potential-zero scale, and verifies the
/// residual |H v - E v| <= 1e-9 |H|_F for every returned state.
VibronicSolution solve(const ModelParams& params, const BasisSpec& basis,
                       int states);

/// Doubles the basis from size 32 until, for all requested states, the
/// electron-vibration entanglement entropy changes by less than `tol` and
/// the energy by less than `tol * hbar_omega` between consecutive sizes,
/// up to a ceiling of 4096. Returns the solution at the smallest passing
/// size with converged = true, or the 4096-basis solution flagged
/// converged = false. When e0 = 0 and j != 0 the near-degenerate tunneling
/// doublets are parity-purified first (see parity_project) so that the
/// entropy of deep double-well states is well defined.
VibronicSolution auto_solve(const ModelParams& params, int states,
                            double tol);

/// Replaces every adjacent pair of states closer than gap_tol * hbar_omega
/// by the symmetric/antisymmetric combinations under the interchange
/// c(1,i) <-> (-1)^i c(2,i), which commutes with the Hamiltonian when
/// e0 = 0. Ordered symmetric-first for j < 0 (antisymmetric-first for
/// j > 0), with a deterministic overall sign. Idempotent; states outside
/// such pairs are untouched. Throws if e0 != 0 or j = 0.
void parity_project(VibronicSolution& solution, const ModelParams& params,
                    double gap_tol = 1e-8);

}  // namespace vibronic
