#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "vibronic/entanglement.hpp"
#include "vibronic/hamiltonian.hpp"
#include "vibronic/perturbation.hpp"
#include "vibronic/presets.hpp"
#include "vibronic/report.hpp"
#include "vibronic/sweep.hpp"
#include "vibronic/version.hpp"

using namespace vibronic;

// ---------------------------------------------------------------- presets

TEST_CASE("builtin preset table") {
    const std::vector<MoleculePreset>& all = builtin_presets();
    REQUIRE(all.size() == 7);

    const MoleculePreset& ammonia = find_preset("ammonia");
    CHECK(ammonia.params.e0 == 0.0);
    CHECK(ammonia.params.hbar_omega == 1700.0);
    CHECK(ammonia.params.j == -60000.0);
    CHECK(derive(ammonia.params).lambda ==
          doctest::Approx(160000.0).epsilon(1e-12));
    CHECK(ammonia.params.unit_label == "cm^-1");
    CHECK(ammonia.r1 == 0.8);
    CHECK(ammonia.r2 == 0.01);
    CHECK(ammonia.r3 == 0.0);
    CHECK(ammonia.reference_s0 == 0.43);
    CHECK(ammonia.reference_s1 == 0.44);

    CHECK(find_preset("benzene").reference_s0 == 0.07);
    CHECK(find_preset("3pyr").params.e0 == 2100.0);
    CHECK(find_preset("3pyr").r3 == 1.3);
    CHECK(find_preset("prc").params.hbar_omega == 980.0);
    CHECK(find_preset("prc").r2 == 0.4);
    CHECK(find_preset("semibullvalene").reference_s1 == 0.37);

    // ct-xps is the ct parameter set plus a core-hole offset; its source
    // quotes only the excited-state entropy.
    const MoleculePreset& ct = find_preset("ct");
    const MoleculePreset& xps = find_preset("ct-xps");
    CHECK(xps.params.e0 == 22000.0);
    CHECK(xps.params.hbar_omega == ct.params.hbar_omega);
    CHECK(xps.params.j == ct.params.j);
    CHECK(xps.params.delta == ct.params.delta);
    CHECK(xps.r1 == ct.r1);
    CHECK(xps.r2 == ct.r2);
    CHECK(xps.r3 == 27.5);
    CHECK(std::isnan(xps.reference_s0));
    CHECK(xps.reference_s1 == 0.0007);
}

TEST_CASE("preset_model reproduces the quoted ratios in the preset's units") {
    const MoleculePreset& ammonia = find_preset("ammonia");
    const ModelParams m = preset_model(ammonia);
    CHECK(m.hbar_omega == ammonia.params.hbar_omega);
    CHECK(m.unit_label == ammonia.params.unit_label);
    const DerivedQuantities d = derive(m);
    REQUIRE(d.r1.has_value());
    REQUIRE(d.r2.has_value());
    CHECK(*d.r1 == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(*d.r2 == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(d.r3 == doctest::Approx(0.0).epsilon(1e-12));

    const ModelParams x = preset_model(find_preset("ct-xps"));
    const DerivedQuantities dx = derive(x);
    CHECK(dx.r3 == doctest::Approx(27.5).epsilon(1e-12));
    CHECK(x.j < 0.0);
}

TEST_CASE("preset lookup is case-insensitive and lists known names") {
    CHECK(find_preset("AMMONIA").name == "ammonia");
    CHECK(find_preset("Ct-XpS").name == "ct-xps");
    try {
        find_preset("water");
        FAIL("expected invalid_argument");
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        CHECK(msg.find("ammonia") != std::string::npos);
        CHECK(msg.find("semibullvalene") != std::string::npos);
    }
}

TEST_CASE("preset JSON round-trip is lossless") {
    const std::vector<MoleculePreset>& all = builtin_presets();
    const std::string text = presets_to_json(all);
    const std::vector<MoleculePreset> back = presets_from_json(text);
    REQUIRE(back.size() == all.size());
    for (size_t i = 0; i < all.size(); ++i) {
        CHECK(back[i].name == all[i].name);
        CHECK(back[i].notes == all[i].notes);
        CHECK(back[i].params.e0 == all[i].params.e0);
        CHECK(back[i].params.hbar_omega == all[i].params.hbar_omega);
        CHECK(back[i].params.j == all[i].params.j);
        CHECK(back[i].params.delta == all[i].params.delta);
        CHECK(back[i].params.unit_label == all[i].params.unit_label);
        CHECK(back[i].r1 == all[i].r1);
        CHECK(back[i].r2 == all[i].r2);
        CHECK(back[i].r3 == all[i].r3);
        if (std::isnan(all[i].reference_s0))
            CHECK(std::isnan(back[i].reference_s0));
        else
            CHECK(back[i].reference_s0 == all[i].reference_s0);
        CHECK(back[i].reference_s1 == all[i].reference_s1);
    }
    CHECK_THROWS_AS(presets_from_json("not json"), std::exception);
}

TEST_CASE("benzene regression against its published entropies") {
    const MoleculePreset& benzene = find_preset("benzene");
    const VibronicSolution sol = auto_solve(preset_model(benzene), 2, 1e-5);
    CHECK(sol.converged);
    const double s0 = analyze(sol.state(0), sol.n_basis, 0).entropy;
    const double s1 = analyze(sol.state(1), sol.n_basis, 1).entropy;
    CHECK(std::abs(s0 - benzene.reference_s0) <= 0.05);
    CHECK(std::abs(s1 - benzene.reference_s1) <= 0.05);
}

// ----------------------------------------------------------------- report

TEST_CASE("single-point pipeline bundles every stage consistently") {
    const ModelParams ct = find_preset("ct").params;
    const PointReport rep = solve_point(ct, 1e-6, 2);
    CHECK(rep.converged);
    REQUIRE(rep.energies.size() == 2);
    REQUIRE(rep.states.size() == 2);
    CHECK(rep.energies[0] < rep.energies[1]);
    CHECK(rep.states[0].state_index == 0);
    CHECK(rep.states[1].state_index == 1);
    CHECK(std::abs(rep.states[0].entropy - 0.37) <= 0.06);
    CHECK(rep.theta.levels_compared == 10);
    CHECK(rep.theta.theta_deg >= 0.0);
    CHECK(rep.theta.theta_deg <= 45.0);
    CHECK(rep.estimates.f00 == franck_condon_overlap(ct));
    CHECK(rep.derived.lambda == doctest::Approx(7100.0).epsilon(1e-12));
    CHECK(rep.n_used >= 32);
    CHECK_THROWS_AS(solve_point(ct, 1e-6, 0), std::invalid_argument);
    CHECK_THROWS_AS(solve_point(ct, 0.0, 2), std::invalid_argument);
}

TEST_CASE("report JSON carries the pipeline and maps NaN to null") {
    const ModelParams uncoupled = ModelParams::canonical(0.3, 1.0, 0.0, 1.0, "");
    const PointReport rep = solve_point(uncoupled, 1e-6, 2);
    const nlohmann::json j = nlohmann::json::parse(report_to_json(rep));
    CHECK(j["params"]["hbar_omega"] == 1.0);
    CHECK(j["n_used"] == rep.n_used);
    CHECK(j["converged"] == rep.converged);
    REQUIRE(j["energies"].size() == 2);
    CHECK(j["energies"][0].get<double>() == rep.energies[0]);
    CHECK(j["states"][0]["entropy"].get<double>() == rep.states[0].entropy);
    // j = 0: the coupling-based estimates are undefined -> null.
    CHECK(j["perturbative_estimates"]["rho_pm_localized"].is_null());
    CHECK(j["perturbative_estimates"]["f00"].get<double>() ==
          rep.estimates.f00);
    CHECK(j["derived"]["lambda"].get<double>() == rep.derived.lambda);
}

// ------------------------------------------------------------------ sweep

TEST_CASE("log spacing hits both endpoints exactly") {
    const std::vector<double> v = log_spaced(0.01, 100.0, 5);
    REQUIRE(v.size() == 5);
    CHECK(v.front() == 0.01);
    CHECK(v.back() == 100.0);
    CHECK(v[1] == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(v[2] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(v[3] == doctest::Approx(10.0).epsilon(1e-12));
    CHECK_THROWS_AS(log_spaced(0.0, 1.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(log_spaced(1.0, 0.5, 5), std::invalid_argument);
    CHECK_THROWS_AS(log_spaced(0.1, 1.0, 1), std::invalid_argument);
}

TEST_CASE("default sweep grid") {
    const SweepSpec spec = SweepSpec::default_grid();
    CHECK(spec.r1_values.size() == 41);
    CHECK(spec.r2_values.size() == 41);
    CHECK(spec.r1_values.front() == 0.01);
    CHECK(spec.r1_values.back() == 100.0);
    REQUIRE(spec.r3_values.size() == 4);
    CHECK(spec.r3_values[0] == 0.0);
    CHECK(spec.r3_values[3] == 1.0);
    CHECK(spec.tol == 1e-6);
    CHECK(spec.states == 2);
}

TEST_CASE("sweep spec validation") {
    SweepSpec spec;
    spec.r1_values = {1.0};
    spec.r2_values = {};
    spec.r3_values = {0.0};
    CHECK_THROWS_AS(spec.validate_and_normalize(), std::invalid_argument);
    spec.r2_values = {0.0};  // r2 must be strictly positive
    CHECK_THROWS_AS(spec.validate_and_normalize(), std::invalid_argument);
    spec.r2_values = {0.5};
    spec.r1_values = {-1.0};
    CHECK_THROWS_AS(spec.validate_and_normalize(), std::invalid_argument);
    spec.r1_values = {2.0, 1.0};  // unsorted is fine, gets sorted
    spec.validate_and_normalize();
    CHECK(spec.r1_values[0] == 1.0);
    spec.states = 1;
    CHECK_THROWS_AS(spec.validate_and_normalize(), std::invalid_argument);
    spec.states = 2;
    spec.tol = 0.0;
    CHECK_THROWS_AS(spec.validate_and_normalize(), std::invalid_argument);
}

TEST_CASE("sweep rows are ordered, complete and thread-count independent") {
    SweepSpec spec;
    spec.r1_values = {1.0, 0.1};  // deliberately unsorted
    spec.r2_values = {0.5};
    spec.r3_values = {0.0, 0.01};
    spec.tol = 1e-6;

    const std::vector<SweepRow> rows = run_sweep(spec, 1);
    REQUIRE(rows.size() == 4);
    // Lexicographic (r3, r2, r1), r1 fastest, axes sorted ascending.
    CHECK(rows[0].r1 == 0.1);
    CHECK(rows[0].r3 == 0.0);
    CHECK(rows[1].r1 == 1.0);
    CHECK(rows[1].r3 == 0.0);
    CHECK(rows[2].r1 == 0.1);
    CHECK(rows[2].r3 == 0.01);
    CHECK(rows[3].r1 == 1.0);
    CHECK(rows[3].r3 == 0.01);

    for (const SweepRow& r : rows) {
        CHECK(r.n_used >= 32);
        CHECK(r.e0_level < r.e1_level + 1e-12);
        CHECK(r.s0 >= 0.0);
        CHECK(r.s0 <= 1.0);
        CHECK(r.s1 >= 0.0);
        CHECK(r.s1 <= 1.0);
        CHECK(r.rho0 >= 0.0);
        CHECK(r.rho0 <= 0.5);
        CHECK(r.theta_opt_deg >= 0.0);
        CHECK(r.theta_opt_deg <= 45.0);
    }

    // One row cross-checked against the direct pipeline.
    const ModelParams p = from_dimensionless({0.1, 0.5, 0.0}, 1.0);
    const VibronicSolution sol = auto_solve(p, 10, 1e-6);
    const EntanglementResult ground = analyze(sol.state(0), sol.n_basis, 0);
    CHECK(rows[0].e0_level == sol.energies[0]);
    CHECK(rows[0].s0 == ground.entropy);
    CHECK(rows[0].n_used == sol.n_used);

    // Same grid on four threads: identical rows, byte-identical CSV.
    const std::vector<SweepRow> parallel = run_sweep(spec, 4);
    REQUIRE(parallel.size() == rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        CHECK(parallel[i].e0_level == rows[i].e0_level);
        CHECK(parallel[i].e1_level == rows[i].e1_level);
        CHECK(parallel[i].s0 == rows[i].s0);
        CHECK(parallel[i].s1 == rows[i].s1);
        CHECK(parallel[i].rho0 == rows[i].rho0);
        CHECK(parallel[i].rho1 == rows[i].rho1);
        CHECK(parallel[i].theta_opt_deg == rows[i].theta_opt_deg);
        CHECK(parallel[i].n_used == rows[i].n_used);
        CHECK(parallel[i].converged == rows[i].converged);
        CHECK(parallel[i].modality == rows[i].modality);
    }
    std::ostringstream serial_csv, parallel_csv;
    write_sweep_csv(serial_csv, rows);
    write_sweep_csv(parallel_csv, parallel);
    CHECK(serial_csv.str() == parallel_csv.str());

    CHECK_THROWS_AS(run_sweep(spec, 0), std::invalid_argument);
}

TEST_CASE("sweep CSV format") {
    SweepRow row;
    row.r1 = 0.123456789123;
    row.r2 = 100.0;
    row.r3 = 0.01;
    row.n_used = 64;
    row.converged = true;
    row.e0_level = -1.5;
    row.e1_level = 0.25;
    row.s0 = 0.987654321987;
    row.s1 = 0.5;
    row.rho0 = 0.25;
    row.rho1 = 0.125;
    row.modality = Modality::Bimodal;
    row.theta_opt_deg = 12.34;
    std::ostringstream out;
    write_sweep_csv(out, {row});
    const std::string expected =
        "r1,r2,r3,n_used,converged,e0_level,e1_level,s0,s1,rho0,rho1,"
        "modality,theta_opt_deg\n"
        "0.123456789,100,0.01,64,true,-1.5,0.25,0.987654322,0.5,0.25,0.125,"
        "bimodal,12.34\n";
    CHECK(out.str() == expected);
}

TEST_CASE("sweep JSON carries meta and rows") {
    SweepSpec spec;
    spec.r1_values = {0.5};
    spec.r2_values = {0.5};
    spec.r3_values = {0.0};
    const std::vector<SweepRow> rows = run_sweep(spec, 1);
    const nlohmann::json j = nlohmann::json::parse(sweep_to_json(spec, rows));
    CHECK(j["meta"]["tool"] == "vibronic");
    CHECK(j["meta"]["version"] == std::string(kVersion));
    CHECK(j["meta"]["tol"].get<double>() == spec.tol);
    REQUIRE(j["rows"].size() == 1);
    CHECK(j["rows"][0]["r1"].get<double>() == 0.5);
    CHECK(j["rows"][0]["s0"].get<double>() == rows[0].s0);
    const std::string mod = j["rows"][0]["modality"].get<std::string>();
    CHECK((mod == "unimodal" || mod == "bimodal"));
}
