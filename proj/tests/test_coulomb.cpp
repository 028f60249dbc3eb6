#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "orm/coulomb_power.hpp"

using namespace orm;
using namespace orm::coulomb;

TEST_SUITE("coulomb-power") {

TEST_CASE("z_residual roots") {
    CHECK(z_residual(2.0, 1.0, 0, 0.0, 1.0) == doctest::Approx(0.0));
    auto cubic = [](double z) { return z * z * z - 2 * z * z - 48; };
    for (double z : {1.0, 3.0, 4.4, 7.0}) CHECK(z_residual(z, 1.0, 0, 4.0, 1.0) == doctest::Approx(cubic(z)));
    const double root = oracle_ref::bisect([](double z) { return z_residual(z, 1.0, 0, 4.0, 1.0); }, 0.1, 10);
    CHECK(energy_at_rho(1.0, 0, 4.0, 1.0).Z == doctest::Approx(root).epsilon(1e-11));
    for (int l = 0; l <= 3; ++l) CHECK(energy_at_rho(1.0, l, 0.0, 1.0).Z == doctest::Approx(2.0 / (1 + l)));
}

TEST_CASE("z_residual has one sign change") {
    for (double rho : {0.3, 0.7, 1.2})
        for (double g : {0.01, 4.0, 1000.0}) {
            int changes = 0;
            double prev = z_residual(1e-6, rho, 1, g, 1.5);
            for (double z = 1e-6; z < 1e4; z *= 1.05) {
                const double cur = z_residual(z, rho, 1, g, 1.5);
                if ((cur < 0) != (prev < 0)) ++changes;
                prev = cur;
            }
            CHECK(changes == 1);
        }
}

TEST_CASE("energy_at_rho reductions") {
    CHECK(energy_at_rho(1.0, 0, 0.0, 1.0).E == doctest::Approx(-0.5).epsilon(1e-14));
    for (int l = 0; l <= 4; ++l)
        CHECK(energy_at_rho(1.0, l, 0.0, 1.0).E == doctest::Approx(-0.5 / ((l + 1.0) * (l + 1.0))).epsilon(1e-13));
}

TEST_CASE("CPRatios are positive") {
    for (double rho : {0.05, 0.5, 1.0, 2.0})
        for (int l : {0, 3}) {
            const auto r = CPRatios::at(rho, l, 1.0);
            CHECK(r.R0 > 0);
            CHECK(r.R1 > 0);
            CHECK(r.R2 > 0);
        }
}

TEST_CASE("ground energies of the Cornell potential") {
    CHECK(solve_ground(PotentialSpec::coulomb_power(0.976562, 1), 0).energy == doctest::Approx(0.5580).epsilon(5e-4 / 0.558));
    CHECK(std::abs(solve_ground(PotentialSpec::coulomb_power(1000, 1), 0).energy - 174.8698) <= 5e-3);
    CHECK(std::abs(solve_ground(PotentialSpec::coulomb_power(62.5, 1), 1).energy - 39.4096) <= 5e-3);
    const auto r = solve_ground(PotentialSpec::coulomb_power(62.5, 1), 0);
    CHECK(r.energy == doctest::Approx(24.8569).epsilon(1e-5));
    CHECK(r.rho_opt > 0.5);
    CHECK_FALSE(r.edge_pinned);
}

TEST_CASE("hydrogen levels are exact") {
    for (int l = 0; l <= 4; ++l)
        CHECK(std::abs(solve_ground(PotentialSpec::coulomb_power(0, 1), l).energy + 0.5 / ((l + 1.0) * (l + 1.0))) <= 1e-10);
}

TEST_CASE("energy increases with g") {
    for (int l : {0, 1}) {
        double prev = -1.0;
        for (double g : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0, 100.0, 1000.0}) {
            const double e = solve_ground(PotentialSpec::coulomb_power(g, 1), l).energy;
            CHECK(e > prev);
            prev = e;
        }
    }
}

TEST_CASE("energy is stationary in rho at the optimum") {
    for (double g : {0.976562, 4.0, 100.0}) {
        const auto r = solve_ground(PotentialSpec::coulomb_power(g, 1), 0);
        REQUIRE_FALSE(r.edge_pinned);
        const double h = 1e-4;
        const double d = (energy_at_rho(r.rho_opt + h, 0, g, 1).E - energy_at_rho(r.rho_opt - h, 0, g, 1).E) / (2 * h);
        CHECK(std::abs(d) <= 1e-6 * std::abs(r.energy));
    }
}

TEST_CASE("strong-coupling constant") {
    const auto c1 = strong_coupling_constant(1.0, 0);
    CHECK(std::abs(c1.C - 1.8559) <= 1e-3);
    const auto c2 = strong_coupling_constant(2.0, 0);
    CHECK(c2.C == doctest::Approx(3 / std::sqrt(2.0)).epsilon(1e-9));
    CHECK(c2.rho_opt == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("strong-coupling constant grows with l") {
    double prev = 0.0;
    for (int l = 0; l <= 3; ++l) {
        const double c = strong_coupling_constant(1.0, l).C;
        CHECK(c > prev);
        prev = c;
    }
}

TEST_CASE("scaled energy approaches C monotonically") {
    const double C = strong_coupling_constant(1.0, 0).C;
    double prev_gap = 1e9;
    for (double g : {1e2, 1e4, 1e6, 1e8}) {
        const double gap = std::abs(solve_ground(PotentialSpec::coulomb_power(g, 1), 0).energy / std::cbrt(g * g) - C);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
}

}

TEST_SUITE("coulomb-power-asymptotics") {

// The Coulomb term contributes at relative order g^{-1/3}, so these tolerances
// are tighter than the approach rate allows at these couplings.
TEST_CASE("scaled energy at g = 1e6 within 1e-3 of C") {
    const double C = strong_coupling_constant(1.0, 0).C;
    CHECK(std::abs(solve_ground(PotentialSpec::coulomb_power(1e6, 1), 0).energy / 1e4 - C) <= 1e-3);
}

TEST_CASE("scaled energy at g = 1e8 within 1e-4 of C") {
    for (double nu : {1.0, 2.0}) {
        const double C = strong_coupling_constant(nu, 0).C;
        const double g = 1e8;
        CHECK(std::abs(solve_ground(PotentialSpec::coulomb_power(g, nu), 0).energy / std::pow(g, 2 / (2 + nu)) - C) <= 1e-4);
    }
}

}
