#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "orm/escp.hpp"
#include "orm/numerics.hpp"

using namespace orm;
using namespace orm::escp;

namespace {

const numerics::Quadrature& rule() { return numerics::cached_exp_sinh(200); }

double minus_e(double B, double c, int l) { return -solve_escp(PotentialSpec::escp(B, c), l).energy; }

}  // namespace

TEST_SUITE("escp") {

TEST_CASE("screened integral closed forms") {
    for (double a : {0.5, 1.0, 2.3, 7.7}) {
        CHECK(screened_integral(a, 0.6, 0.0, rule()) == doctest::Approx(std::tgamma(a)).epsilon(1e-13));
        CHECK(screened_integral(a, 1.0, 0.8, rule()) == doctest::Approx(std::tgamma(a) / std::pow(1.8, a)).epsilon(1e-10));
    }
}

TEST_CASE("screened integral against adaptive quadrature") {
    const double ref = oracle_ref::halfline([](double u) { return u * std::exp(-u - std::sqrt(u)); });
    CHECK(screened_integral(2.0, 0.5, 1.0, rule()) == doctest::Approx(ref).epsilon(1e-10));
    for (double t : {0.01, 0.5, 5.0, 50.0}) {
        const double r = oracle_ref::halfline([t](double u) { return std::pow(u, -0.1) * std::exp(-u - t * std::pow(u, 0.45)); });
        const auto got = screened_integral_checked(0.9, 0.45, t, rule());
        CHECK(got.value == doctest::Approx(r).epsilon(1e-10));
        CHECK_FALSE(got.accuracy_warning);
    }
}

TEST_CASE("screened integral is bounded and decreasing in t") {
    double prev = std::tgamma(1.6);
    for (double t : {1e-4, 0.01, 0.1, 1.0, 10.0, 100.0}) {
        const double v = screened_integral(1.6, 0.7, t, rule());
        CHECK(v > 0.0);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("z residual reductions") {
    for (double z : {0.5, 2.0, 3.0}) {
        CHECK(escp_z_residual(z, 1.0, 0, 0.0, 0.3, rule()) == doctest::Approx(z * z - 2 * z));
        CHECK(escp_z_residual(z, 1.0, 0, 1.0, 1e9, rule()) == doctest::Approx(z * z - 2 * z).epsilon(1e-8));
    }
}

TEST_CASE("unscreened energies") {
    for (double c : {0.0, 0.1, 7.0}) CHECK(escp_energy_at_rho(1.0, 0, 0.0, c).E == doctest::Approx(-1.0).epsilon(1e-13));
    for (int l = 0; l <= 4; ++l)
        for (double c : {0.01, 3.0}) CHECK(std::abs(minus_e(0.0, c, l) - 1.0 / ((l + 1.0) * (l + 1.0))) <= 1e-10);
}

TEST_CASE("fixed-rho energy for B = 1, c = 0.1") {
    CHECK(std::abs(escp_energy_at_rho(0.99, 0, 1.0, 0.1).E + 0.33694) <= 5e-4);
}

TEST_CASE("ground energies") {
    const auto r = solve_escp(PotentialSpec::escp(1, 0.5), 1);
    CHECK(std::abs(-r.energy - 0.211998) <= 5e-4);
    CHECK(std::abs(r.rho_opt - 0.87) <= 0.02);
    CHECK(std::abs(minus_e(2, 0.05, 2) - 0.040366) <= 5e-4);
    CHECK(std::abs(minus_e(4, 10, 0) - 0.91317) <= 1e-3);
}

TEST_CASE("weak screening approaches the shifted Coulomb level") {
    for (int l = 0; l <= 2; ++l) {
        const double ref = 0.25 / ((l + 1.0) * (l + 1.0));
        CHECK(std::abs(minus_e(1, 1e-6, l) - ref) <= 1e-4);
    }
}

TEST_CASE("strong screening approaches pure Coulomb") {
    for (int l = 0; l <= 2; ++l) CHECK(std::abs(minus_e(1, 1e4, l) - 1.0 / ((l + 1.0) * (l + 1.0))) <= 1e-3);
}

TEST_CASE("B = 2 nearly cancels the Coulomb tail at small c") {
    const double e = -minus_e(2, 1e-3, 0);
    CHECK(e < 0.0);
    CHECK(std::abs(e + 0.00168) <= 2e-4);
}

TEST_CASE("binding grows with c") {
    for (double B : {1.0, 2.0, 4.0})
        for (int l : {0, 1}) {
            double prev = -1.0;
            for (double c : {0.005, 0.01, 0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 10.0}) {
                const double v = minus_e(B, c, l);
                CHECK(v > prev);
                prev = v;
            }
        }
}

TEST_CASE("flat minimum in rho") {
    for (double c : {0.001, 0.01, 0.1, 1.0, 10.0})
        for (int l : {0, 1, 2}) {
            const auto r = solve_escp(PotentialSpec::escp(1, c), l);
            for (double dr : {-0.01, 0.01}) {
                const double e = escp_energy_at_rho(r.rho_opt + dr, l, 1, c).E;
                CHECK(std::abs(e - r.energy) < 1e-4 * std::abs(r.energy));
            }
        }
}

TEST_CASE("no stable root reports zero and flags the state") {
    const auto r = solve_escp(PotentialSpec::escp(4, 1e-4), 0);
    if (std::abs(r.energy) < 1e-6) CHECK(r.no_reliable_bound_state);
}

}

TEST_SUITE("escp-strong-repulsion") {

TEST_CASE("fixed-rho energy for B = 4, c = 1") {
    CHECK(std::abs(escp_energy_at_rho(0.53, 0, 4.0, 1.0).E + 0.3790) <= 5e-4);
}

}
