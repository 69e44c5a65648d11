#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "vibronic/model.hpp"

using namespace vibronic;

TEST_CASE("derive reproduces the published molecular ratios") {
    const ModelParams ammonia =
        ModelParams::from_reorganization(0.0, 1700.0, -60000.0, 160000.0,
                                         "cm^-1");
    const DerivedQuantities d = derive(ammonia);
    CHECK(d.lambda == doctest::Approx(160000.0).epsilon(1e-12));
    CHECK(d.delta_e == doctest::Approx(200000.0).epsilon(1e-12));
    CHECK(d.ratio_r1() == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(d.ratio_r2() == doctest::Approx(0.0085).epsilon(1e-12));
    CHECK(d.r3 == 0.0);
    CHECK(d.huang_rhys ==
          doctest::Approx(160000.0 / 1700.0).epsilon(1e-12));
}

TEST_CASE("derive handles vanishing-denominator ratios") {
    SUBCASE("lambda = 0 leaves r1 undefined") {
        const ModelParams p = ModelParams::canonical(0.0, 1.0, -5.0, 0.0, "");
        const DerivedQuantities d = derive(p);
        CHECK(d.lambda == 0.0);
        CHECK(d.delta_e == doctest::Approx(10.0).epsilon(1e-14));
        CHECK(!d.r1.has_value());
        CHECK_THROWS_AS((void)d.ratio_r1(), std::domain_error);
        CHECK(d.ratio_r2() == doctest::Approx(0.1).epsilon(1e-14));
    }
    SUBCASE("j = 0 keeps deltaE = lambda") {
        const ModelParams p =
            ModelParams::from_reorganization(0.0, 2.0, 0.0, 7.0, "");
        const DerivedQuantities d = derive(p);
        CHECK(d.delta_e == doctest::Approx(7.0).epsilon(1e-14));
        CHECK(d.ratio_r1() == 0.0);
    }
    SUBCASE("lambda = 0 and j = 0 leaves both ratios undefined") {
        const ModelParams p = ModelParams::canonical(0.5, 1.0, 0.0, 0.0, "");
        const DerivedQuantities d = derive(p);
        CHECK(!d.r1.has_value());
        CHECK(!d.r2.has_value());
        CHECK_THROWS_AS((void)d.ratio_r2(), std::domain_error);
    }
}

TEST_CASE("from_dimensionless pins the documented corner points") {
    SUBCASE("r1 = 0 means j = 0 and lambda = deltaE") {
        const ModelParams p = from_dimensionless({0.0, 1.0, 0.0}, 1.0);
        CHECK(p.j == 0.0);
        CHECK(2.0 * p.delta * p.delta == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("r1 = r2 = 1 splits deltaE between lambda and 2|J|") {
        const ModelParams p = from_dimensionless({1.0, 1.0, 0.0}, 1.0);
        const double lambda = 2.0 * p.delta * p.delta;
        CHECK(lambda == doctest::Approx(0.70711).epsilon(1e-4));
        CHECK(p.j == doctest::Approx(-0.35355).epsilon(1e-4));
        CHECK(p.delta == doctest::Approx(0.59460).epsilon(1e-4));
    }
    SUBCASE("the ammonia point recovers the physical parameters") {
        const ModelParams p =
            from_dimensionless({0.75, 0.0085, 0.0}, 1700.0, "cm^-1");
        CHECK(2.0 * 1700.0 * p.delta * p.delta ==
              doctest::Approx(160000.0).epsilon(1e-9));
        CHECK(p.j == doctest::Approx(-60000.0).epsilon(1e-9));
        CHECK(p.e0 == 0.0);
    }
}

TEST_CASE("from_dimensionless round-trips through derive") {
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> log_ratio(-3.0, 3.0);
    std::uniform_real_distribution<double> asym(0.0, 10.0);
    std::uniform_real_distribution<double> log_scale(-3.0, 4.0);
    for (int k = 0; k < 200; ++k) {
        DimensionlessPoint pt;
        pt.r1 = std::pow(10.0, log_ratio(rng));
        pt.r2 = std::pow(10.0, log_ratio(rng));
        pt.r3 = asym(rng);
        const double scale = std::pow(10.0, log_scale(rng));
        const ModelParams p = from_dimensionless(pt, scale);
        const DerivedQuantities d = derive(p);
        CHECK(d.ratio_r1() == doctest::Approx(pt.r1).epsilon(1e-12));
        CHECK(d.ratio_r2() == doctest::Approx(pt.r2).epsilon(1e-12));
        CHECK(d.r3 == doctest::Approx(pt.r3).epsilon(1e-12));
        CHECK(p.hbar_omega == scale);
        CHECK(p.j <= 0.0);
    }
}

TEST_CASE("parameter validation rejects unusable inputs") {
    CHECK_THROWS_AS(ModelParams::canonical(0.0, 0.0, 0.0, 1.0, ""),
                    std::invalid_argument);
    CHECK_THROWS_AS(ModelParams::canonical(0.0, -1.0, 0.0, 1.0, ""),
                    std::invalid_argument);
    CHECK_THROWS_AS(ModelParams::canonical(0.0, 1.0, 0.0, -0.5, ""),
                    std::invalid_argument);
    CHECK_THROWS_AS(ModelParams::from_reorganization(0.0, 1.0, 0.0, -2.0, ""),
                    std::invalid_argument);
    CHECK_THROWS_AS(from_dimensionless({1.0, 0.0, 0.0}, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(from_dimensionless({-0.1, 1.0, 0.0}, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(from_dimensionless({1.0, 1.0, -0.1}, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(from_dimensionless({1.0, 1.0, 0.0}, 0.0),
                    std::invalid_argument);
}

TEST_CASE("canonical form folds the sign gauges") {
    const ModelParams p = ModelParams::canonical(-3.0, 2.0, 4.0, 1.0, "u");
    CHECK(p.e0 == 3.0);
    CHECK(p.j == -4.0);
    CHECK(p.unit_label == "u");
}

TEST_CASE("adiabatic surfaces hit their analytic anchor values") {
    SUBCASE("uncoupled symmetric wells touch zero at each minimum") {
        const ModelParams p = ModelParams::canonical(0.0, 1.0, 0.0, 1.3, "");
        const double lambda = 2.0 * p.delta * p.delta;
        const auto [gs_at_min, es_at_min] = bo_energies(p, p.delta);
        CHECK(gs_at_min == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(es_at_min == doctest::Approx(lambda).epsilon(1e-14));
    }
    SUBCASE("at Q = 0 the symmetric gap is 2|J| around lambda/4") {
        const ModelParams p = ModelParams::canonical(0.0, 1.0, -0.7, 1.1, "");
        const double lambda = 2.0 * p.delta * p.delta;
        const auto [gs, es] = bo_energies(p, 0.0);
        CHECK(gs == doctest::Approx(0.25 * lambda - 0.7).epsilon(1e-14));
        CHECK(es == doctest::Approx(0.25 * lambda + 0.7).epsilon(1e-14));
    }
}

namespace {

// Central second difference of the ground adiabatic surface at Q = 0.
double ground_curvature_fd(const ModelParams& p, double h) {
    const double f0 = bo_energies(p, 0.0).first;
    const double fp = bo_energies(p, h).first;
    const double fm = bo_energies(p, -h).first;
    return (fp - 2.0 * f0 + fm) / (h * h);
}

double excited_curvature_fd(const ModelParams& p, double h) {
    const double f0 = bo_energies(p, 0.0).second;
    const double fp = bo_energies(p, h).second;
    const double fm = bo_energies(p, -h).second;
    return (fp - 2.0 * f0 + fm) / (h * h);
}

}  // namespace

TEST_CASE("symmetric-well curvatures at Q = 0 equal hw(1 -/+ lambda/2|J|)") {
    const double h = 5e-4;
    for (const auto& [lambda, j] :
         {std::pair{3.0, -0.9}, std::pair{0.5, -2.0}, std::pair{2.0, -5.0}}) {
        const ModelParams p =
            ModelParams::from_reorganization(0.0, 1.0, j, lambda, "");
        const double gs_exact = 1.0 - lambda / (2.0 * std::abs(j));
        const double es_exact = 1.0 + lambda / (2.0 * std::abs(j));
        CHECK(ground_curvature_fd(p, h) ==
              doctest::Approx(gs_exact).epsilon(1e-6));
        CHECK(excited_curvature_fd(p, h) ==
              doctest::Approx(es_exact).epsilon(1e-6));
    }
}

TEST_CASE("the barrier at Q = 0 appears exactly when 2|J| < lambda") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.1, 4.0);
    int checked = 0;
    while (checked < 60) {
        const double lambda = u(rng);
        const double j = -0.5 * u(rng);
        const double ratio = 2.0 * std::abs(j) / lambda;
        if (std::abs(ratio - 1.0) < 0.05) continue;  // skip the critical line
        const ModelParams p =
            ModelParams::from_reorganization(0.0, 1.0, j, lambda, "");
        const double curvature = ground_curvature_fd(p, 1e-3);
        CHECK((ratio < 1.0) == (curvature < 0.0));
        ++checked;
    }
}

TEST_CASE("surfaces are invariant under the J sign gauge") {
    ModelParams plus;  // bypasses canonical normalization on purpose
    plus.e0 = 0.4;
    plus.hbar_omega = 1.5;
    plus.j = 0.8;
    plus.delta = 1.2;
    ModelParams minus = plus;
    minus.j = -0.8;
    for (const double q : {-2.0, -0.3, 0.0, 0.7, 3.1}) {
        CHECK(bo_energies(plus, q).first == bo_energies(minus, q).first);
        CHECK(bo_energies(plus, q).second == bo_energies(minus, q).second);
    }
}

TEST_CASE("surfaces scale exactly with the overall energy scale") {
    const ModelParams base = ModelParams::canonical(0.3, 1.1, -0.6, 0.9, "");
    SUBCASE("power-of-two scales are bitwise exact") {
        for (const double s : {0.25, 4.0, 1024.0}) {
            ModelParams scaled = base;
            scaled.e0 *= s;
            scaled.hbar_omega *= s;
            scaled.j *= s;
            for (const double q : {-1.5, 0.0, 0.4, 2.2}) {
                const auto [g0, e0] = bo_energies(base, q);
                const auto [gs, es] = bo_energies(scaled, q);
                CHECK(gs == s * g0);
                CHECK(es == s * e0);
            }
        }
    }
    SUBCASE("generic scales agree to relative 1e-12") {
        const double s = 731.4159;
        ModelParams scaled = base;
        scaled.e0 *= s;
        scaled.hbar_omega *= s;
        scaled.j *= s;
        for (const double q : {-1.5, 0.0, 0.4, 2.2}) {
            const auto [g0, e0] = bo_energies(base, q);
            const auto [gs, es] = bo_energies(scaled, q);
            CHECK(gs == doctest::Approx(s * g0).epsilon(1e-12));
            CHECK(es == doctest::Approx(s * e0).epsilon(1e-12));
        }
    }
}
