#include "vibronic/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "vibronic/diabatization.hpp"
#include "vibronic/entanglement.hpp"
#include "vibronic/hamiltonian.hpp"
#include "vibronic/version.hpp"

namespace vibronic {

namespace {

// Fixed 9-significant-digit rendering shared by the CSV writer; keeps the
// output byte-stable across platforms and thread counts.
std::string format_sig9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

SweepRow solve_row(const SweepSpec& spec, double r1, double r2, double r3) {
    SweepRow row;
    row.r1 = r1;
    row.r2 = r2;
    row.r3 = r3;
    const ModelParams params = from_dimensionless({r1, r2, r3}, 1.0);
    const int levels = std::max(spec.states, 10);
    const VibronicSolution sol = auto_solve(params, levels, spec.tol);
    row.n_used = sol.n_used;
    row.converged = sol.converged;
    row.e0_level = sol.energies[0];
    row.e1_level = sol.energies[1];
    const EntanglementResult ground = analyze(sol.state(0), sol.n_basis, 0);
    const EntanglementResult excited = analyze(sol.state(1), sol.n_basis, 1);
    row.s0 = ground.entropy;
    row.rho0 = ground.rho;
    row.s1 = excited.entropy;
    row.rho1 = excited.rho;
    row.modality = classify_region(params, sol);
    row.theta_opt_deg = fit_theta(params, sol, 10).theta_deg;
    return row;
}

}  // namespace

std::vector<double> log_spaced(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > lo))
        throw std::invalid_argument("log_spaced needs 0 < lo < hi");
    if (n < 2) throw std::invalid_argument("log_spaced needs >= 2 points");
    std::vector<double> v(n);
    const double step = (std::log(hi) - std::log(lo)) / (n - 1);
    for (int i = 0; i < n; ++i) v[i] = lo * std::exp(step * i);
    v.front() = lo;
    v.back() = hi;
    return v;
}

SweepSpec SweepSpec::default_grid() {
    SweepSpec spec;
    spec.r1_values = log_spaced(0.01, 100.0, 41);
    spec.r2_values = log_spaced(0.01, 100.0, 41);
    spec.r3_values = {0.0, 0.01, 0.1, 1.0};
    return spec;
}

void SweepSpec::validate_and_normalize() {
    if (r1_values.empty() || r2_values.empty() || r3_values.empty())
        throw std::invalid_argument("sweep axes must all be non-empty");
    for (const double v : r1_values)
        if (!std::isfinite(v) || !(v >= 0.0))
            throw std::invalid_argument("r1 axis needs finite values >= 0");
    for (const double v : r2_values)
        if (!std::isfinite(v) || !(v > 0.0))
            throw std::invalid_argument("r2 axis needs finite values > 0");
    for (const double v : r3_values)
        if (!std::isfinite(v) || !(v >= 0.0))
            throw std::invalid_argument("r3 axis needs finite values >= 0");
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (states < 2)
        throw std::invalid_argument("sweep reports two states; states >= 2");
    std::sort(r1_values.begin(), r1_values.end());
    std::sort(r2_values.begin(), r2_values.end());
    std::sort(r3_values.begin(), r3_values.end());
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads) {
    SweepSpec s = spec;
    s.validate_and_normalize();
    if (threads < 1)
        throw std::invalid_argument("thread count must be >= 1");

    const size_t n1 = s.r1_values.size();
    const size_t n2 = s.r2_values.size();
    const size_t n3 = s.r3_values.size();
    const size_t total = n1 * n2 * n3;
    std::vector<SweepRow> rows(total);

    // Work stealing by atomic index; each row lands at its grid position,
    // so the emitted order never depends on scheduling.
    std::atomic<size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex failure_mutex;
    std::exception_ptr failure;

    const auto worker = [&] {
        for (;;) {
            const size_t idx = next.fetch_add(1);
            if (idx >= total || failed.load()) return;
            try {
                const size_t i1 = idx % n1;
                const size_t i2 = (idx / n1) % n2;
                const size_t i3 = idx / (n1 * n2);
                rows[idx] = solve_row(s, s.r1_values[i1], s.r2_values[i2],
                                      s.r3_values[i3]);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                failed.store(true);
            }
        }
    };

    const int pool = static_cast<int>(
        std::min<size_t>(static_cast<size_t>(threads), total));
    if (pool <= 1) {
        worker();
    } else {
        std::vector<std::thread> team;
        team.reserve(pool);
        for (int t = 0; t < pool; ++t) team.emplace_back(worker);
        for (std::thread& t : team) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "r1,r2,r3,n_used,converged,e0_level,e1_level,s0,s1,rho0,rho1,"
           "modality,theta_opt_deg\n";
    for (const SweepRow& r : rows) {
        out << format_sig9(r.r1) << ',' << format_sig9(r.r2) << ','
            << format_sig9(r.r3) << ',' << r.n_used << ','
            << (r.converged ? "true" : "false") << ','
            << format_sig9(r.e0_level) << ',' << format_sig9(r.e1_level) << ','
            << format_sig9(r.s0) << ',' << format_sig9(r.s1) << ','
            << format_sig9(r.rho0) << ',' << format_sig9(r.rho1) << ','
            << modality_name(r.modality) << ','
            << format_sig9(r.theta_opt_deg) << '\n';
    }
}

std::string sweep_to_json(const SweepSpec& spec,
                          const std::vector<SweepRow>& rows) {
    nlohmann::json j;
    j["meta"] = {{"tool", "vibronic"},       {"version", kVersion},
                 {"tol", spec.tol},          {"states", spec.states},
                 {"r1_values", spec.r1_values}, {"r2_values", spec.r2_values},
                 {"r3_values", spec.r3_values}};
    nlohmann::json arr = nlohmann::json::array();
    for (const SweepRow& r : rows)
        arr.push_back({{"r1", r.r1},
                       {"r2", r.r2},
                       {"r3", r.r3},
                       {"n_used", r.n_used},
                       {"converged", r.converged},
                       {"e0_level", r.e0_level},
                       {"e1_level", r.e1_level},
                       {"s0", r.s0},
                       {"s1", r.s1},
                       {"rho0", r.rho0},
                       {"rho1", r.rho1},
                       {"modality", modality_name(r.modality)},
                       {"theta_opt_deg", r.theta_opt_deg}});
    j["rows"] = arr;
    return j.dump(2);
}

}  // namespace vibronic
