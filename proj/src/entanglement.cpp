#include "vibronic/entanglement.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace vibronic {

namespace {

void check_state(std::span<const double> state, int n) {
    if (n < 1 || state.size() != static_cast<size_t>(2 * n))
        throw std::invalid_argument("coefficient row must have 2n entries");
    double norm2 = 0.0;
    for (const double c : state) norm2 += c * c;
    if (std::abs(std::sqrt(norm2) - 1.0) > 1e-8)
        throw std::invalid_argument(
            "coefficient row is not normalized (|norm - 1| = " +
            std::to_string(std::abs(std::sqrt(norm2) - 1.0)) + ")");
}

}  // namespace

double binary_entropy(double x) {
    if (!(x >= 0.0) || !(x <= 1.0))
        throw std::domain_error("binary_entropy argument outside [0, 1]");
    if (x == 0.0 || x == 1.0) return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

Eigen::Matrix2d reduced_electronic(std::span<const double> state, int n) {
    check_state(state, n);
    double p11 = 0.0, p22 = 0.0, p12 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double c1 = state[i];
        const double c2 = state[n + i];
        p11 += c1 * c1;
        p22 += c2 * c2;
        p12 += c1 * c2;
    }
    Eigen::Matrix2d rho;
    rho << p11, p12, p12, p22;
    return rho;
}

Eigen::MatrixXd reduced_vibrational(std::span<const double> state, int n) {
    check_state(state, n);
    Eigen::Map<const Eigen::VectorXd> c1(state.data(), n);
    Eigen::Map<const Eigen::VectorXd> c2(state.data() + n, n);
    return c1 * c1.transpose() + c2 * c2.transpose();
}

EntanglementResult analyze(std::span<const double> state, int n,
                           int state_index) {
    const Eigen::Matrix2d rho = reduced_electronic(state, n);
    const double trace = rho.trace();
    const double det = rho.determinant();
    const double disc = std::sqrt(std::max(trace * trace - 4.0 * det, 0.0));
    // Smaller eigenvalue via the cancellation-free quadratic root.
    double small = (trace + disc) > 0.0 ? 2.0 * det / (trace + disc) : 0.0;
    if (small < -1e-12 || small > 0.5 + 1e-12)
        throw std::runtime_error(
            "reduced density matrix eigenvalue outside [0, 1/2]: " +
            std::to_string(small));
    small = std::min(std::max(small, 0.0), 0.5);

    EntanglementResult r;
    r.state_index = state_index;
    r.rho = small;
    r.rho_pm = 1.0 - 2.0 * small;
    r.entropy = binary_entropy(small);
    return r;
}

}  // namespace vibronic
