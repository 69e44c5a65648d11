#pragma once

#include <Eigen/Dense>
#include <span>

namespace vibronic {

/// Entanglement measures of one vibronic eigenstate. rho is the smaller
/// eigenvalue of the reduced electronic density matrix (in [0, 1/2]),
/// rho_pm = 1 - 2 rho its population imbalance in the diagonalizing basis,
/// and entropy the von Neumann entropy in bits (base-2, in [0, 1]).
struct EntanglementResult {
    int state_index = 0;
    double rho = 0.0;
    double rho_pm = 1.0;
    double entropy = 0.0;
};

/// Shannon entropy of the pair (x, 1-x) in bits; 0 at x = 0 or 1 and 1 at
/// x = 1/2. Throws std::domain_error outside [0, 1].
double binary_entropy(double x);

/// Reduced electronic (2x2) density matrix of a unit-norm coefficient row:
/// rho_kl = sum_i c(k,i) c(l,i). `state` has 2n entries laid out as in
/// VibronicSolution. Throws if the norm deviates from 1 by more than 1e-8.
Eigen::Matrix2d reduced_electronic(std::span<const double> state, int n);

/// Reduced vibrational (n x n) density matrix:
/// rho_ij = c(1,i) c(1,j) + c(2,i) c(2,j).
Eigen::MatrixXd reduced_vibrational(std::span<const double> state, int n);

/// Full measure set for one eigenstate. The two nonzero eigenvalues of the
/// 2x2 reduced matrix are obtained in closed form; by the Schmidt
/// decomposition they coincide with the nonzero spectrum of the
/// vibrational reduction, so one entropy serves both subsystems.
EntanglementResult analyze(std::span<const double> state, int n,
                           int state_index = 0);

}  // namespace vibronic
