#include "vibronic/hamiltonian.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vibronic/entanglement.hpp"

namespace vibronic {

namespace {

void check_params(const ModelParams& params) {
    if (!(params.hbar_omega > 0.0))
        throw std::invalid_argument("hbar_omega must be positive");
    if (!(params.delta >= 0.0))
        throw std::invalid_argument("delta must be non-negative");
    if (!std::isfinite(params.e0) || !std::isfinite(params.j))
        throw std::invalid_argument("e0 and j must be finite");
}

void check_basis(const BasisSpec& basis, int states) {
    if (basis.size < 1)
        throw std::invalid_argument("basis size must be >= 1");
    if (states < 1 || states > 2 * basis.size)
        throw std::invalid_argument("requested state count " +
                                    std::to_string(states) +
                                    " exceeds basis order " +
                                    std::to_string(2 * basis.size));
}

// Ladder coupling <i|Q|i+1> scaled by the displacement.
double ladder_element(double delta, int i) {
    return delta * std::sqrt(0.5 * (i + 1));
}

// Lower-triangle banded storage (bandwidth 2) of the Hamiltonian in units
// of hbar_omega, with the basis interleaved as index = 2i + k so that the
// matrix is pentadiagonal: the electronic coupling j sits one off the
// diagonal and the oscillator ladder two off.
struct BandedHamiltonian {
    int order = 0;
    std::vector<double> ab;  // 3 x order, column-major, LAPACK 'L' layout

    double& at(int offset, int column) { return ab[3 * column + offset]; }
    double at(int offset, int column) const { return ab[3 * column + offset]; }

    double frobenius_norm() const {
        double diag = 0.0, off = 0.0;
        for (int c = 0; c < order; ++c) {
            diag += at(0, c) * at(0, c);
            if (c + 1 < order) off += at(1, c) * at(1, c);
            if (c + 2 < order) off += at(2, c) * at(2, c);
        }
        return std::sqrt(diag + 2.0 * off);
    }

    // y = H x for the residual check.
    void multiply(const double* x, double* y) const {
        for (int r = 0; r < order; ++r) {
            double acc = at(0, r) * x[r];
            if (r >= 1) acc += at(1, r - 1) * x[r - 1];
            if (r >= 2) acc += at(2, r - 2) * x[r - 2];
            if (r + 1 < order) acc += at(1, r) * x[r + 1];
            if (r + 2 < order) acc += at(2, r) * x[r + 2];
            y[r] = acc;
        }
    }
};

BandedHamiltonian build_banded(double e0_scaled, double j_scaled, double delta,
                               int n) {
    BandedHamiltonian h;
    h.order = 2 * n;
    h.ab.assign(3 * h.order, 0.0);
    for (int i = 0; i < n; ++i) {
        h.at(0, 2 * i) = i + 0.5;
        h.at(0, 2 * i + 1) = e0_scaled + (i + 0.5);
        h.at(1, 2 * i) = j_scaled;
        if (i + 1 < n) {
            const double t = ladder_element(delta, i);
            h.at(2, 2 * i) = -t;     // first-diabat ladder
            h.at(2, 2 * i + 1) = t;  // second-diabat ladder
        }
    }
    return h;
}

void throw_lapack_failure(const char* routine, int order, lapack_int info) {
    throw std::runtime_error(std::string(routine) + " failed at matrix order " +
                             std::to_string(order) + " (info = " +
                             std::to_string(info) + ")");
}

// Lowest `states` eigenvalues of the banded form via reduction to
// tridiagonal shape (no orthogonal factor kept) plus bisection.
std::vector<double> banded_eigenvalues(const BandedHamiltonian& h,
                                       int states) {
    const int order = h.order;
    std::vector<double> ab_copy = h.ab;  // dsbtrd overwrites the band
    std::vector<double> diag(order), sub(order > 1 ? order - 1 : 1);
    double q_unused = 0.0;
    lapack_int info =
        LAPACKE_dsbtrd(LAPACK_COL_MAJOR, 'N', 'L', order, 2, ab_copy.data(), 3,
                       diag.data(), sub.data(), &q_unused, 1);
    if (info != 0) throw_lapack_failure("dsbtrd", order, info);
    std::vector<double> w(order, 0.0);
    std::vector<lapack_int> iblock(order, 0), isplit(order, 0);
    lapack_int found = 0, nsplit = 0;
    info = LAPACKE_dstebz('I', 'E', order, 0.0, 0.0, 1, states,
                          2.0 * LAPACKE_dlamch('S'), diag.data(), sub.data(),
                          &found, &nsplit, w.data(), iblock.data(),
                          isplit.data());
    if (info != 0 || found != states) throw_lapack_failure("dstebz", order, info);
    w.resize(states);
    return w;
}

// LU-ready general-band copy of (h - shift), kl = ku = 2.
void fill_shifted_band(const BandedHamiltonian& h, double shift,
                       std::vector<double>& gb) {
    constexpr int kLd = 7;  // 2*kl + ku + 1
    gb.assign(static_cast<size_t>(kLd) * h.order, 0.0);
    for (int c = 0; c < h.order; ++c) {
        gb[kLd * c + 4] = h.at(0, c) - shift;
        if (c + 1 < h.order) {
            gb[kLd * c + 5] = h.at(1, c);
            gb[kLd * (c + 1) + 3] = h.at(1, c);
        }
        if (c + 2 < h.order) {
            gb[kLd * c + 6] = h.at(2, c);
            gb[kLd * (c + 2) + 2] = h.at(2, c);
        }
    }
}

// Lowest `states` eigenpairs of the banded form; eigenvectors come back
// column-wise in the interleaved index.  Eigenvalues are found by
// bisection, eigenvectors by shifted inverse iteration on the band with
// orthogonalization across near-degenerate clusters (ground doublets of
// deep double wells collapse below machine resolution, so every cluster
// member is kept mutually orthogonal while iterating).
void solve_banded(const BandedHamiltonian& h, int states,
                  std::vector<double>& values, std::vector<double>& vectors) {
    const int order = h.order;
    values = banded_eigenvalues(h, states);
    vectors.assign(static_cast<size_t>(order) * states, 0.0);

    // Row-sum norm of the band; residuals are held to a few ulps of it so
    // that eigenvector contamination stays ~eps*|H|/gap, matching what a
    // dense solver would deliver.
    std::vector<double> rowsum(order, 0.0);
    for (int c = 0; c < order; ++c) {
        rowsum[c] += std::abs(h.at(0, c));
        if (c + 1 < order) {
            rowsum[c] += std::abs(h.at(1, c));
            rowsum[c + 1] += std::abs(h.at(1, c));
        }
        if (c + 2 < order) {
            rowsum[c] += std::abs(h.at(2, c));
            rowsum[c + 2] += std::abs(h.at(2, c));
        }
    }
    const double hnorm = std::max(
        1e-300, *std::max_element(rowsum.begin(), rowsum.end()));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double res_ok = 30.0 * eps * hnorm;

    double spread = std::max(1.0, std::abs(values.front()));
    spread = std::max(spread, std::abs(values.back()));
    const double cluster_tol = 1e-3 * spread;

    std::vector<double> gb, x(order), y(order), best(order);
    std::vector<lapack_int> ipiv(order);
    int cluster_begin = 0;
    for (int s = 0; s < states; ++s) {
        if (s > 0 && values[s] - values[s - 1] > cluster_tol)
            cluster_begin = s;
        double shift = values[s];
        double best_res = std::numeric_limits<double>::infinity();
        for (int attempt = 0; attempt < 4 && best_res > res_ok; ++attempt) {
            fill_shifted_band(h, shift, gb);
            const lapack_int info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, order,
                                                   order, 2, 2, gb.data(), 7,
                                                   ipiv.data());
            if (info < 0) throw_lapack_failure("dgbtrf", order, info);
            if (info > 0) {  // exactly singular pivot: nudge the shift
                shift += (attempt + 1) * 10.0 * eps * hnorm;
                continue;
            }
            std::mt19937 gen(0x9e3779b9u ^ (static_cast<unsigned>(order) << 8)
                             ^ static_cast<unsigned>(s + attempt * states));
            std::uniform_real_distribution<double> u(-0.5, 0.5);
            for (auto& xi : x) xi = u(gen);
            for (int iter = 0; iter < 6; ++iter) {
                if (LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', order, 2, 2, 1,
                                   gb.data(), 7, ipiv.data(), x.data(),
                                   order) != 0)
                    throw_lapack_failure("dgbtrs", order, 0);
                for (int t = cluster_begin; t < s; ++t) {
                    const double* vt = vectors.data() +
                                       static_cast<size_t>(order) * t;
                    double dot = 0.0;
                    for (int i = 0; i < order; ++i) dot += vt[i] * x[i];
                    for (int i = 0; i < order; ++i) x[i] -= dot * vt[i];
                }
                double nrm = 0.0;
                for (double xi : x) nrm += xi * xi;
                nrm = std::sqrt(nrm);
                if (nrm == 0.0) break;
                for (auto& xi : x) xi /= nrm;
                h.multiply(x.data(), y.data());
                double res = 0.0;
                for (int i = 0; i < order; ++i) {
                    const double r = y[i] - values[s] * x[i];
                    res += r * r;
                }
                res = std::sqrt(res);
                if (res < best_res) {
                    best_res = res;
                    best = x;
                }
                if (res <= res_ok) break;
            }
            shift += (attempt + 1) * 10.0 * eps * hnorm;
        }
        if (!(best_res <= 1e4 * eps * hnorm))
            throw std::runtime_error(
                "inverse iteration failed to converge (order " +
                std::to_string(order) + ")");
        std::copy(best.begin(), best.end(),
                  vectors.begin() + static_cast<size_t>(order) * s);
    }
}

// Lowest `states` eigenpairs of one uncoupled oscillator ladder
// (tridiagonal in the per-block index).
void solve_block(double e0_scaled, double sign, double delta, int n,
                 int states, std::vector<double>& values,
                 std::vector<double>& vectors) {
    std::vector<double> diag(n), sub(n > 1 ? n - 1 : 0);
    for (int i = 0; i < n; ++i) diag[i] = e0_scaled + (i + 0.5);
    for (int i = 0; i + 1 < n; ++i) sub[i] = sign * ladder_element(delta, i);
    const double abstol = 2.0 * LAPACKE_dlamch('S');
    std::vector<lapack_int> ifail(n, 0);
    values.assign(states, 0.0);
    vectors.assign(static_cast<size_t>(n) * states, 0.0);
    lapack_int found = 0;
    const lapack_int info = LAPACKE_dstevx(
        LAPACK_COL_MAJOR, 'V', 'I', n, diag.data(), sub.data(), 0.0, 0.0, 1,
        states, abstol, &found, values.data(), vectors.data(), n,
        ifail.data());
    if (info != 0 || found != states) throw_lapack_failure("dstevx", n, info);
}

}  // namespace

std::span<const double> VibronicSolution::state(int s) const {
    if (s < 0 || s >= state_count())
        throw std::out_of_range("state index out of range");
    return {coefficients.data() + static_cast<size_t>(s) * 2 * n_basis,
            static_cast<size_t>(2) * n_basis};
}

double VibronicSolution::gap01() const {
    if (state_count() < 2)
        throw std::logic_error("gap01 needs at least two states");
    return energies[1] - energies[0];
}

Eigen::MatrixXd build_matrix(const ModelParams& params,
                             const BasisSpec& basis) {
    check_params(params);
    if (basis.size < 1)
        throw std::invalid_argument("basis size must be >= 1");
    const int n = basis.size;
    const double hw = params.hbar_omega;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = (i + 0.5) * hw;
        m(n + i, n + i) = params.e0 + (i + 0.5) * hw;
        m(i, n + i) = params.j;
        m(n + i, i) = params.j;
    }
    for (int i = 0; i + 1 < n; ++i) {
        const double t = hw * ladder_element(params.delta, i);
        m(i, i + 1) = -t;
        m(i + 1, i) = -t;
        m(n + i, n + i + 1) = t;
        m(n + i + 1, n + i) = t;
    }
    return m;
}

VibronicSolution solve(const ModelParams& params, const BasisSpec& basis,
                       int states) {
    check_params(params);
    check_basis(basis, states);
    const int n = basis.size;
    const double hw = params.hbar_omega;
    const double e0s = params.e0 / hw;
    const double js = params.j / hw;

    VibronicSolution sol;
    sol.n_basis = n;
    sol.n_used = n;
    sol.energies.assign(states, 0.0);
    sol.coefficients.setZero(states, 2 * n);

    const BandedHamiltonian banded = build_banded(e0s, js, params.delta, n);

    if (js == 0.0) {
        // Uncoupled ladders: solving the blocks separately guarantees exact
        // product eigenstates even where the two ladders are degenerate.
        const int per_block = std::min(states, n);
        std::vector<double> w1, z1, w2, z2;
        solve_block(0.0, -1.0, params.delta, n, per_block, w1, z1);
        solve_block(e0s, 1.0, params.delta, n, per_block, w2, z2);
        int i1 = 0, i2 = 0;
        for (int s = 0; s < states; ++s) {
            const bool take_first =
                i2 >= per_block || (i1 < per_block && w1[i1] <= w2[i2]);
            if (take_first) {
                sol.energies[s] = w1[i1];
                for (int i = 0; i < n; ++i)
                    sol.coefficients(s, i) = z1[static_cast<size_t>(i1) * n + i];
                ++i1;
            } else {
                sol.energies[s] = w2[i2];
                for (int i = 0; i < n; ++i)
                    sol.coefficients(s, n + i) =
                        z2[static_cast<size_t>(i2) * n + i];
                ++i2;
            }
        }
    } else {
        std::vector<double> w, z;
        solve_banded(banded, states, w, z);
        for (int s = 0; s < states; ++s) {
            sol.energies[s] = w[s];
            const double* column = z.data() + static_cast<size_t>(s) * 2 * n;
            for (int i = 0; i < n; ++i) {
                sol.coefficients(s, i) = column[2 * i];
                sol.coefficients(s, n + i) = column[2 * i + 1];
            }
        }
    }

    // Residual check in the scaled banded form before rescaling.
    const double residual_bound = 1e-9 * banded.frobenius_norm();
    std::vector<double> x(2 * n), y(2 * n);
    for (int s = 0; s < states; ++s) {
        for (int i = 0; i < n; ++i) {
            x[2 * i] = sol.coefficients(s, i);
            x[2 * i + 1] = sol.coefficients(s, n + i);
        }
        banded.multiply(x.data(), y.data());
        double norm2 = 0.0;
        for (int r = 0; r < 2 * n; ++r) {
            const double d = y[r] - sol.energies[s] * x[r];
            norm2 += d * d;
        }
        if (std::sqrt(norm2) > residual_bound)
            throw std::runtime_error(
                "eigenpair residual exceeds bound at matrix order " +
                std::to_string(2 * n) + ", state " + std::to_string(s));
    }

    // Restore physical units, measuring energies from the potential zero
    // of V(Q): the assembly's zero-point ladder omits the constant
    // lambda/4 = hw delta^2 / 2.
    const double shift = 0.5 * params.delta * params.delta;
    for (double& e : sol.energies) e = (e + shift) * hw;
    return sol;
}

void parity_project(VibronicSolution& solution, const ModelParams& params,
                    double gap_tol) {
    if (params.e0 != 0.0)
        throw std::invalid_argument(
            "parity projection requires e0 = 0 (the interchange does not "
            "commute with an asymmetric Hamiltonian)");
    if (params.j == 0.0)
        throw std::invalid_argument("parity projection requires j != 0");
    if (!(gap_tol > 0.0))
        throw std::invalid_argument("gap_tol must be positive");

    const int n = solution.n_basis;
    const int m = solution.state_count();
    using RowVec = Eigen::RowVectorXd;

    // The interchange c(1,i) <-> (-1)^i c(2,i): an exact signed permutation.
    const auto apply_parity = [n](const RowVec& v) {
        RowVec out(2 * n);
        double sign = 1.0;
        for (int i = 0; i < n; ++i) {
            out(i) = sign * v(n + i);
            out(n + i) = sign * v(i);
            sign = -sign;
        }
        return out;
    };
    const auto fix_sign = [](RowVec& v) {
        int idx = 0;
        v.cwiseAbs().maxCoeff(&idx);
        if (v(idx) < 0.0) v = -v;
    };

    const double gap_bound = gap_tol * params.hbar_omega;
    const bool symmetric_first = params.j < 0.0;
    int s = 0;
    while (s + 1 < m) {
        if (solution.energies[s + 1] - solution.energies[s] >= gap_bound) {
            ++s;
            continue;
        }
        const RowVec a = solution.coefficients.row(s);
        const RowVec b = solution.coefficients.row(s + 1);
        const RowVec pa = apply_parity(a);
        const RowVec pb = apply_parity(b);
        RowVec sym = (a + pa).norm() >= (b + pb).norm() ? (a + pa).eval()
                                                        : (b + pb).eval();
        RowVec anti = (a - pa).norm() >= (b - pb).norm() ? (a - pa).eval()
                                                         : (b - pb).eval();
        // A tunneling doublet always yields one candidate of each parity
        // with norm >= sqrt(2); anything smaller means the pair was already
        // parity-pure (accidental same-parity degeneracy), so leave it be.
        if (sym.norm() > 1e-6 && anti.norm() > 1e-6) {
            sym /= sym.norm();
            anti /= anti.norm();
            fix_sign(sym);
            fix_sign(anti);
            solution.coefficients.row(s) = symmetric_first ? sym : anti;
            solution.coefficients.row(s + 1) = symmetric_first ? anti : sym;
        }
        s += 2;
    }
}

namespace {

struct EvaluatedSolution {
    VibronicSolution sol;
    std::vector<double> entropies;
};

EvaluatedSolution evaluate_at(const ModelParams& params, int n, int states,
                              double gap_tol) {
    EvaluatedSolution ev;
    ev.sol = solve(params, BasisSpec{n}, states);
    if (params.e0 == 0.0 && params.j != 0.0)
        parity_project(ev.sol, params, gap_tol);
    ev.entropies.reserve(states);
    for (int s = 0; s < states; ++s)
        ev.entropies.push_back(analyze(ev.sol.state(s), n, s).entropy);
    return ev;
}

}  // namespace

VibronicSolution auto_solve(const ModelParams& params, int states,
                            double tol) {
    if (!(tol > 0.0))
        throw std::invalid_argument("tolerance must be positive");
    check_params(params);
    constexpr int kStart = 32;
    constexpr int kCeiling = 4096;
    constexpr double kGapTol = 1e-8;

    int n = kStart;
    while (2 * n < states) n *= 2;
    EvaluatedSolution prev = evaluate_at(params, n, states, kGapTol);
    while (n < kCeiling) {
        n *= 2;
        EvaluatedSolution cur = evaluate_at(params, n, states, kGapTol);
        bool settled = true;
        for (int s = 0; s < states && settled; ++s) {
            settled = std::abs(cur.entropies[s] - prev.entropies[s]) < tol &&
                      std::abs(cur.sol.energies[s] - prev.sol.energies[s]) <
                          tol * params.hbar_omega;
        }
        if (settled) {
            prev.sol.converged = true;
            return std::move(prev.sol);
        }
        prev = std::move(cur);
    }
    prev.sol.converged = false;
    return std::move(prev.sol);
}

}  // namespace vibronic
