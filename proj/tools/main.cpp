// Command-line front end: solve, sweep, density, surfaces, theta-fit,
// preset, perturb. Exit codes: 0 success, 1 runtime failure, 2 invalid
// arguments, 3 non-convergence under --strict.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vibronic/density.hpp"
#include "vibronic/diabatization.hpp"
#include "vibronic/hamiltonian.hpp"
#include "vibronic/model.hpp"
#include "vibronic/presets.hpp"
#include "vibronic/report.hpp"
#include "vibronic/sweep.hpp"
#include "vibronic/version.hpp"

namespace {

using namespace vibronic;

struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string format_sig9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

// ---------------------------------------------------------------- options

struct ModelOptions {
    std::string preset;
    std::string preset_file;
    double e0 = 0.0;
    double homega = 0.0;
    double j = 0.0;
    double delta = 0.0;
    double lambda = 0.0;
    std::string unit = "cm^-1";
    CLI::Option* opt_homega = nullptr;
    CLI::Option* opt_lambda = nullptr;
};

void add_model_options(CLI::App* cmd, ModelOptions& mo) {
    auto* preset =
        cmd->add_option("--preset", mo.preset, "Built-in preset name");
    cmd->add_option("--preset-file", mo.preset_file,
                    "JSON preset file searched by --preset")
        ->check(CLI::ExistingFile);
    auto* e0 = cmd->add_option("--e0", mo.e0, "Well asymmetry E0 (>= 0)");
    mo.opt_homega =
        cmd->add_option("--homega", mo.homega, "Vibrational quantum");
    auto* j = cmd->add_option("--j", mo.j, "Resonance coupling J");
    auto* delta =
        cmd->add_option("--delta", mo.delta, "Dimensionless displacement");
    mo.opt_lambda =
        cmd->add_option("--lambda", mo.lambda, "Reorganization energy");
    cmd->add_option("--unit", mo.unit, "Energy unit label")
        ->capture_default_str();
    delta->excludes(mo.opt_lambda);
    mo.opt_lambda->excludes(delta);
    preset->excludes(e0, mo.opt_homega, j, delta, mo.opt_lambda);
}

ModelParams resolve_model(const ModelOptions& mo) {
    if (!mo.preset.empty()) {
        if (!mo.preset_file.empty()) {
            std::ifstream in(mo.preset_file);
            std::stringstream text;
            text << in.rdbuf();
            const auto presets = presets_from_json(text.str());
            for (const MoleculePreset& p : presets)
                if (p.name == mo.preset) return preset_model(p);
            throw std::invalid_argument("preset '" + mo.preset +
                                        "' not found in " + mo.preset_file);
        }
        return preset_model(find_preset(mo.preset));
    }
    if (!*mo.opt_homega)
        throw std::invalid_argument("--homega is required without --preset");
    if (*mo.opt_lambda)
        return ModelParams::from_reorganization(mo.e0, mo.homega, mo.j,
                                                mo.lambda, mo.unit);
    return ModelParams::canonical(mo.e0, mo.homega, mo.j, mo.delta, mo.unit);
}

ThresholdVariant variant_from(const std::string& name) {
    return name == "printed" ? ThresholdVariant::AsPrinted
                             : ThresholdVariant::F00Consistent;
}

void require_converged(bool strict, bool converged) {
    if (strict && !converged)
        throw NonConvergence(
            "basis did not converge to tolerance by size 4096");
}

std::vector<double> parse_linear_grid(const std::string& text,
                                      const ModelParams& params) {
    if (text.empty()) return default_density_grid(params);
    double lo = 0.0, hi = 0.0;
    int points = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d", &lo, &hi, &points) != 3)
        throw std::invalid_argument("grid must be lo:hi:points");
    return linear_grid(lo, hi, points);
}

std::vector<double> parse_log_range(const std::string& text) {
    double lo = 0.0, hi = 0.0;
    int points = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d", &lo, &hi, &points) != 3)
        throw std::invalid_argument("range must be lo:hi:points");
    return log_spaced(lo, hi, points);
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t used = 0;
        values.push_back(std::stod(item, &used));
        if (used != item.size())
            throw std::invalid_argument("bad number in list: " + item);
    }
    if (values.empty()) throw std::invalid_argument("empty value list");
    return values;
}

// Writes to the named file, or to stdout for "-".
void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
    if (!out.good()) throw std::runtime_error("short write to " + path);
}

// ------------------------------------------------------------ subcommands

void run_solve(const ModelOptions& mo, double tol, int states,
               const std::string& variant, bool strict) {
    const ModelParams params = resolve_model(mo);
    const PointReport report =
        solve_point(params, tol, states, variant_from(variant));
    require_converged(strict, report.converged);
    std::cout << report_to_json(report) << "\n";
}

void run_sweep_cmd(const std::string& spec_file, const std::string& r1_range,
                   const std::string& r2_range, const std::string& r3_list,
                   double tol, int threads, const std::string& out_path,
                   const std::string& format, bool strict) {
    SweepSpec spec = SweepSpec::default_grid();
    if (!spec_file.empty()) {
        std::ifstream in(spec_file);
        std::stringstream text;
        text << in.rdbuf();
        const nlohmann::json j = nlohmann::json::parse(text.str());
        if (j.contains("r1_values"))
            spec.r1_values = j["r1_values"].get<std::vector<double>>();
        if (j.contains("r2_values"))
            spec.r2_values = j["r2_values"].get<std::vector<double>>();
        if (j.contains("r3_values"))
            spec.r3_values = j["r3_values"].get<std::vector<double>>();
        if (j.contains("tol")) spec.tol = j["tol"].get<double>();
        if (j.contains("states")) spec.states = j["states"].get<int>();
    }
    if (!r1_range.empty()) spec.r1_values = parse_log_range(r1_range);
    if (!r2_range.empty()) spec.r2_values = parse_log_range(r2_range);
    if (!r3_list.empty()) spec.r3_values = parse_list(r3_list);
    if (tol > 0.0) spec.tol = tol;  // negative: flag absent, keep spec value

    const std::vector<SweepRow> rows = run_sweep(spec, threads);
    bool all_converged = true;
    for (const SweepRow& r : rows) all_converged = all_converged && r.converged;
    require_converged(strict, all_converged);

    if (format == "json") {
        write_text(out_path, sweep_to_json(spec, rows));
    } else {
        std::ostringstream csv;
        write_sweep_csv(csv, rows);
        write_text(out_path, csv.str());
    }
    if (out_path != "-")
        std::cerr << "wrote " << rows.size() << " rows to " << out_path
                  << "\n";
}

void run_density(const ModelOptions& mo, const std::string& grid_text,
                 double tol, const std::string& out_path, bool strict) {
    const ModelParams params = resolve_model(mo);
    const VibronicSolution sol = auto_solve(params, 2, tol);
    require_converged(strict, sol.converged);
    const std::vector<double> grid = parse_linear_grid(grid_text, params);
    const DensityProfile p = profile(sol.state(0), sol.n_basis, grid);

    std::ostringstream csv;
    csv << "q,density\n";
    for (size_t g = 0; g < p.grid.size(); ++g)
        csv << format_sig9(p.grid[g]) << ',' << format_sig9(p.values[g])
            << '\n';
    write_text(out_path, csv.str());

    std::cerr << "modality: " << modality_name(p.modality)
              << ", maxima: " << p.maxima_q.size()
              << ", minima: " << p.minima_q.size();
    if (p.narrow_grid_warning)
        std::cerr << " (warning: density not negligible at grid edges)";
    std::cerr << "\n";
}

void run_surfaces(const ModelOptions& mo, const std::string& grid_text,
                  double tol, const std::string& out_path, bool strict) {
    const ModelParams params = resolve_model(mo);
    const VibronicSolution sol = auto_solve(params, 2, tol);
    require_converged(strict, sol.converged);
    const std::vector<double> grid = parse_linear_grid(grid_text, params);
    const std::vector<SurfaceSample> rows =
        sample_surfaces(params, sol, grid);

    std::ostringstream csv;
    csv << "q,diabat1,diabat2,e_gs,e_es,ground_density\n";
    for (const SurfaceSample& s : rows)
        csv << format_sig9(s.q) << ',' << format_sig9(s.diabat1) << ','
            << format_sig9(s.diabat2) << ',' << format_sig9(s.e_gs) << ','
            << format_sig9(s.e_es) << ',' << format_sig9(s.ground_density)
            << '\n';
    write_text(out_path, csv.str());
}

void run_theta_fit(const ModelOptions& mo, int levels, double tol,
                   bool strict) {
    const ModelParams params = resolve_model(mo);
    const VibronicSolution sol =
        auto_solve(params, std::max(levels, 2), tol);
    require_converged(strict, sol.converged);
    const ThetaFit fit = fit_theta(params, sol, levels);
    nlohmann::json j = {{"theta_opt_deg", fit.theta_deg},
                        {"rms", fit.rms},
                        {"levels_compared", fit.levels_compared},
                        {"n_used", sol.n_used},
                        {"converged", sol.converged}};
    std::cout << j.dump(2) << "\n";
}

void run_preset_list(const std::string& preset_file) {
    std::vector<MoleculePreset> presets;
    if (!preset_file.empty()) {
        std::ifstream in(preset_file);
        std::stringstream text;
        text << in.rdbuf();
        presets = presets_from_json(text.str());
    } else {
        presets = builtin_presets();
    }
    for (const MoleculePreset& p : presets) {
        const DerivedQuantities d = derive(p.params);
        std::printf("%-15s e0=%-7g hw=%-6g j=%-7g lambda=%-7g %s", p.name.c_str(),
                    p.params.e0, p.params.hbar_omega, p.params.j, d.lambda,
                    p.params.unit_label.c_str());
        std::printf("  (solved at r1=%.3g r2=%.3g r3=%.3g)\n", p.r1, p.r2,
                    p.r3);
    }
}

void run_preset_show(const std::string& name, const std::string& preset_file) {
    const MoleculePreset* found = nullptr;
    std::vector<MoleculePreset> from_file;
    if (!preset_file.empty()) {
        std::ifstream in(preset_file);
        std::stringstream text;
        text << in.rdbuf();
        from_file = presets_from_json(text.str());
        for (const MoleculePreset& p : from_file)
            if (p.name == name) found = &p;
        if (!found)
            throw std::invalid_argument("preset '" + name + "' not found in " +
                                        preset_file);
    } else {
        found = &find_preset(name);
    }
    std::cout << presets_to_json({*found}) << "\n";
}

void run_perturb(const ModelOptions& mo, const std::string& variant) {
    const ModelParams params = resolve_model(mo);
    const DerivedQuantities d = derive(params);
    const PerturbativeEstimates est =
        perturbative_estimates(params, variant_from(variant));
    nlohmann::json j;
    j["params"] = {{"e0", params.e0},
                   {"hbar_omega", params.hbar_omega},
                   {"j", params.j},
                   {"delta", params.delta},
                   {"unit", params.unit_label}};
    j["derived"] = {{"lambda", d.lambda}, {"delta_e", d.delta_e}};
    j["estimates"] = {
        {"f00", est.f00},
        {"rho_pm_localized", est.rho_pm_localized},
        {"e0_fragility_threshold", est.e0_fragility_threshold},
        {"rho_pm_delocalized", est.rho_pm_delocalized},
        {"entropy_delocalized", est.entropy_delocalized},
        {"resonance_metric", est.resonance_metric}};
    std::cout << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Exact treatment of a two-state, one-mode coupled harmonic vibronic "
        "model: spectra, electron-vibration entanglement, density modality, "
        "diabatization angles and perturbative limits"};
    app.set_version_flag("--version", vibronic::kVersion);
    app.require_subcommand(1);

    // solve ---------------------------------------------------------------
    auto* solve_cmd = app.add_subcommand(
        "solve", "Solve one parameter set and print a JSON report");
    ModelOptions mo_solve;
    add_model_options(solve_cmd, mo_solve);
    double solve_tol = 1e-6;
    int solve_states = 2;
    std::string solve_variant = "f00";
    bool solve_strict = false;
    solve_cmd->add_option("--tol", solve_tol, "Convergence tolerance")
        ->capture_default_str();
    solve_cmd->add_option("--states", solve_states, "Reported eigenstates")
        ->check(CLI::Range(1, 20))
        ->capture_default_str();
    solve_cmd
        ->add_option("--eq17-variant", solve_variant,
                     "Fragility threshold variant")
        ->check(CLI::IsMember({"printed", "f00"}))
        ->capture_default_str();
    solve_cmd->add_flag("--strict", solve_strict,
                        "Exit 3 when the basis does not converge");
    solve_cmd->callback([&] {
        run_solve(mo_solve, solve_tol, solve_states, solve_variant,
                  solve_strict);
    });

    // sweep ---------------------------------------------------------------
    auto* sweep_cmd = app.add_subcommand(
        "sweep", "Map the dimensionless parameter space to CSV or JSON");
    std::string sweep_spec_file, sweep_r1, sweep_r2, sweep_r3;
    std::string sweep_out = "sweep.csv", sweep_format = "csv";
    double sweep_tol = 1e-6;
    int sweep_threads =
        std::max(1u, std::thread::hardware_concurrency());
    bool sweep_strict = false;
    sweep_cmd->add_option("--spec", sweep_spec_file,
                          "JSON sweep spec (r1_values/r2_values/r3_values"
                          "/tol/states)")
        ->check(CLI::ExistingFile);
    sweep_cmd->add_option("--r1", sweep_r1, "Log range lo:hi:points");
    sweep_cmd->add_option("--r2", sweep_r2, "Log range lo:hi:points");
    sweep_cmd->add_option("--r3", sweep_r3, "Comma-separated values");
    auto* sweep_tol_opt =
        sweep_cmd->add_option("--tol", sweep_tol, "Convergence tolerance")
            ->capture_default_str();
    sweep_cmd->add_option("--threads", sweep_threads, "Worker threads")
        ->check(CLI::Range(1, 256))
        ->capture_default_str();
    sweep_cmd->add_option("--out", sweep_out, "Output path ('-' for stdout)")
        ->capture_default_str();
    sweep_cmd->add_option("--format", sweep_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sweep_cmd->add_flag("--strict", sweep_strict,
                        "Exit 3 when any grid point fails to converge");
    sweep_cmd->callback([&] {
        run_sweep_cmd(sweep_spec_file, sweep_r1, sweep_r2, sweep_r3,
                      sweep_tol_opt->count() > 0 ? sweep_tol : -1.0,
                      sweep_threads, sweep_out, sweep_format, sweep_strict);
    });

    // density -------------------------------------------------------------
    auto* density_cmd = app.add_subcommand(
        "density", "Ground-state vibrational density on a coordinate grid");
    ModelOptions mo_density;
    add_model_options(density_cmd, mo_density);
    std::string density_grid, density_out = "-";
    double density_tol = 1e-6;
    bool density_strict = false;
    density_cmd->add_option("--grid", density_grid,
                            "Linear grid lo:hi:points (default +-(delta+6), "
                            "2001 points)");
    density_cmd->add_option("--tol", density_tol, "Convergence tolerance")
        ->capture_default_str();
    density_cmd->add_option("--out", density_out, "Output path ('-' stdout)")
        ->capture_default_str();
    density_cmd->add_flag("--strict", density_strict,
                          "Exit 3 when the basis does not converge");
    density_cmd->callback([&] {
        run_density(mo_density, density_grid, density_tol, density_out,
                    density_strict);
    });

    // surfaces ------------------------------------------------------------
    auto* surfaces_cmd = app.add_subcommand(
        "surfaces",
        "Diabatic and adiabatic surfaces plus ground density on a grid");
    ModelOptions mo_surfaces;
    add_model_options(surfaces_cmd, mo_surfaces);
    std::string surfaces_grid, surfaces_out = "-";
    double surfaces_tol = 1e-6;
    bool surfaces_strict = false;
    surfaces_cmd->add_option("--grid", surfaces_grid,
                             "Linear grid lo:hi:points (default +-(delta+6), "
                             "2001 points)");
    surfaces_cmd->add_option("--tol", surfaces_tol, "Convergence tolerance")
        ->capture_default_str();
    surfaces_cmd->add_option("--out", surfaces_out, "Output path ('-' stdout)")
        ->capture_default_str();
    surfaces_cmd->add_flag("--strict", surfaces_strict,
                           "Exit 3 when the basis does not converge");
    surfaces_cmd->callback([&] {
        run_surfaces(mo_surfaces, surfaces_grid, surfaces_tol, surfaces_out,
                     surfaces_strict);
    });

    // theta-fit -----------------------------------------------------------
    auto* theta_cmd = app.add_subcommand(
        "theta-fit",
        "Best uncoupled-ladder rotation angle against the exact levels");
    ModelOptions mo_theta;
    add_model_options(theta_cmd, mo_theta);
    int theta_levels = 10;
    double theta_tol = 1e-6;
    bool theta_strict = false;
    theta_cmd->add_option("--levels", theta_levels, "Levels in the RMS fit")
        ->check(CLI::Range(1, 20))
        ->capture_default_str();
    theta_cmd->add_option("--tol", theta_tol, "Convergence tolerance")
        ->capture_default_str();
    theta_cmd->add_flag("--strict", theta_strict,
                        "Exit 3 when the basis does not converge");
    theta_cmd->callback(
        [&] { run_theta_fit(mo_theta, theta_levels, theta_tol, theta_strict); });

    // preset --------------------------------------------------------------
    auto* preset_cmd =
        app.add_subcommand("preset", "List or show molecular presets");
    preset_cmd->require_subcommand(1);
    auto* list_cmd = preset_cmd->add_subcommand("list", "One line per preset");
    std::string list_file;
    list_cmd->add_option("--preset-file", list_file, "JSON preset file")
        ->check(CLI::ExistingFile);
    list_cmd->callback([&] { run_preset_list(list_file); });
    auto* show_cmd =
        preset_cmd->add_subcommand("show", "Full JSON of one preset");
    std::string show_name, show_file;
    show_cmd->add_option("name", show_name, "Preset name")->required();
    show_cmd->add_option("--preset-file", show_file, "JSON preset file")
        ->check(CLI::ExistingFile);
    show_cmd->callback([&] { run_preset_show(show_name, show_file); });

    // perturb -------------------------------------------------------------
    auto* perturb_cmd = app.add_subcommand(
        "perturb", "Closed-form limit estimates without diagonalization");
    ModelOptions mo_perturb;
    add_model_options(perturb_cmd, mo_perturb);
    std::string perturb_variant = "f00";
    perturb_cmd
        ->add_option("--eq17-variant", perturb_variant,
                     "Fragility threshold variant")
        ->check(CLI::IsMember({"printed", "f00"}))
        ->capture_default_str();
    perturb_cmd->callback([&] { run_perturb(mo_perturb, perturb_variant); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const NonConvergence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
