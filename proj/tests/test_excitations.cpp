#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "orm/coulomb_power.hpp"
#include "orm/escp.hpp"
#include "orm/excitations.hpp"
#include "orm/oracle.hpp"
#include "orm/orm_core.hpp"

using namespace orm;
using namespace orm::excitations;

namespace {

// <n| q^{2tau} |n> at omega = 1 minus the vacuum and :q^2: parts, by quadrature.
double q_n_oracle(int n, double tau, double d) {
    const double full = oracle_ref::expectation(n, d, 1.0, [tau](double q) { return std::pow(q, 2 * tau); });
    const double c0 = std::exp(std::lgamma(d / 2 + tau) - std::lgamma(d / 2));
    const double c1 = tau * std::exp(std::lgamma(d / 2 + tau) - std::lgamma(d / 2 + 1));
    return full - c0 - 2 * n * c1;
}

// <n| e^{-x q^2} |n> minus the same two parts.
double t_n_oracle(int n, double x, double d) {
    const double full = oracle_ref::expectation(n, d, 1.0, [x](double q) { return std::exp(-x * q * q); });
    return full - std::pow(1 + x, -d / 2) * (1 - 2 * n * x / (1 + x));
}

}  // namespace

TEST_SUITE("excitations") {

TEST_CASE("norm_const values") {
    CHECK(norm_const(0, 3.3) == 1.0);
    CHECK(norm_const(1, 3.0) == doctest::Approx(1 / std::sqrt(6.0)));
}

TEST_CASE("norm_const normalizes the pair-excited states") {
    for (double d : {3.0, 4.0, 5.5, 7.0, 8.0})
        for (int n = 0; n <= 4; ++n) {
            const auto h = oracle_ref::pair_excited(n, d);
            const double c = norm_const(n, d);
            CHECK(c * c * oracle_ref::weighted(h, h, d, [](double) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-11));
        }
}

TEST_CASE("Gram matrix is the identity") {
    for (double d : {3.0, 4.0, 5.5, 8.0}) {
        double worst = 0.0;
        for (int m = 0; m <= 4; ++m)
            for (int n = 0; n <= 4; ++n) {
                const double g = oracle_ref::weighted(oracle_ref::pair_excited(m, d), oracle_ref::pair_excited(n, d), d,
                                                      [](double) { return 1.0; }) *
                                 norm_const(m, d) * norm_const(n, d);
                worst = std::max(worst, std::abs(g - (m == n ? 1.0 : 0.0)));
            }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("t_n edge cases and quadrature oracle") {
    CHECK(t_n(0, 0.7, 5.0) == 0.0);
    CHECK(t_n(3, 0.0, 5.0) == 0.0);
    CHECK(t_n(2, 0.7, 5.0) == doctest::Approx(t_n_oracle(2, 0.7, 5.0)).epsilon(1e-11));
    for (int n = 1; n <= 4; ++n)
        for (double x : {0.05, 1.0, 9.0}) CHECK(t_n(n, x, 4.6) == doctest::Approx(t_n_oracle(n, x, 4.6)).epsilon(1e-10));
}

TEST_CASE("q_n against the quadrature oracle") {
    CHECK(q_n(0, 0.6, 4.2) == 0.0);
    CHECK(q_n(3, 0.6, 4.2) == doctest::Approx(q_n_oracle(3, 0.6, 4.2)).epsilon(1e-10));
    for (double d : {3.0, 4.0, 5.5, 8.0})
        for (double tau : {-0.5, 0.3, 0.7, 1.4, 2.5})
            for (int n = 1; n <= 4; ++n) CHECK(std::abs(q_n(n, tau, d) - q_n_oracle(n, tau, d)) <= 1e-8);
}

TEST_CASE("q_n is zero at tau = 1") {
    for (int n = 0; n <= 4; ++n)
        for (double d : {3.0, 4.0, 5.5, 8.0}) CHECK(std::abs(q_n(n, 1.0, d)) < 1e-12);
}

TEST_CASE("q^2 expectation is d/2w plus the :q^2: element") {
    for (double d : {3.0, 4.0, 5.5, 8.0})
        for (int n = 0; n <= 4; ++n) {
            const double w = 1.3;
            const double ref = oracle_ref::expectation(n, d, w, [](double q) { return q * q; });
            CHECK(d / (2 * w) + power_matrix_elements(n, d, w)[0] == doctest::Approx(ref).epsilon(1e-10));
        }
}

TEST_CASE("power matrix elements") {
    const auto a = power_matrix_elements(1, 4.0, 1.0);
    CHECK(a[0] == 2.0);
    CHECK(a[1] == 6.0);
    CHECK(a[2] == 0.0);
    const auto z = power_matrix_elements(0, 4.0, 3.0);
    CHECK(z == std::array<double, 3>{0, 0, 0});
    const auto b = power_matrix_elements(2, 3.0, 2.0);
    CHECK(b[0] == doctest::Approx(2.0));
    CHECK(b[1] == doctest::Approx(5.5));
    CHECK(b[2] == doctest::Approx(10.5));
}

TEST_CASE("power matrix elements against the oracle through normal ordering") {
    for (double d : {3.0, 4.0, 5.5, 8.0})
        for (int n = 0; n <= 4; ++n) {
            const double w = 0.8;
            const auto pm = power_matrix_elements(n, d, w);
            for (int p = 2; p <= 3; ++p) {
                const auto c = core::normal_order_power(p, d, w);
                const double lib = c[0] + c[1] * pm[0] + c[2] * pm[1] + c[3] * pm[2];
                const double ref = oracle_ref::expectation(n, d, w, [p](double q) { return std::pow(q, 2 * p); });
                CHECK(lib == doctest::Approx(ref).epsilon(1e-10));
            }
        }
}

TEST_CASE("oscillator basis engine agrees with the brute-force states") {
    const oracle::OscillatorBasisState s{2, 4.0, 1.5};
    auto f = [](double q) { return std::pow(q, 1.2); };
    CHECK(oracle::basis_expectation(f, s) == doctest::Approx(oracle_ref::expectation(2, 4.0, 1.5, f)).epsilon(1e-11));
    CHECK(oracle::basis_expectation([](double) { return 1.0; }, s) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(oracle::basis_expectation([](double q) { return q * q; }, {0, 5.0, 2.0}) == doctest::Approx(1.25).epsilon(1e-12));
}

TEST_CASE("q_n is the x-transform of t_n") {
    for (double tau : {0.3, 0.7, 1.4})
        for (int n = 1; n <= 3; ++n) {
            const double d = 4.6;
            const double integral =
                oracle_ref::halfline([&](double x) { return std::pow(x, -1 - tau) * t_n(n, x, d); }, 1e-13) / std::tgamma(-tau);
            CHECK(std::abs(q_n(n, tau, d) - integral) <= 1e-8);
        }
}

TEST_CASE("e0_excitation") {
    CHECK(e0_excitation(0, 2.5) == 0.0);
    CHECK(e0_excitation(1, 3.0) == 6.0);
    CHECK(e0_excitation(5, 0.2) == doctest::Approx(2.0));
}

TEST_CASE("screened series agrees with quadrature where it converges") {
    for (double rho : {0.6, 0.9})
        for (double c : {0.05, 0.4}) {
            const auto s = screened_series(1, 4.5, rho, 1.2, c, 60, 1e-13);
            REQUIRE(s.converged);
            CHECK(s.value == doctest::Approx(screened_quadrature(1, 4.5, rho, 1.2, c, 200)).epsilon(1e-8));
        }
}

TEST_CASE("excitation split reduces to the ground split at n = 0") {
    for (auto spec : {PotentialSpec::coulomb_power(4, 1), PotentialSpec::escp(1, 0.1)}) {
        const auto x = excitation_split(spec, 0, 0, 0.8, 1.3);
        CHECK(x.A1 == x.A);
        CHECK(x.B1 == x.B);
    }
}

TEST_CASE("n_r = 0 path reproduces the ground solvers") {
    SolverConfig cfg;
    const auto cp = solve_excited(PotentialSpec::coulomb_power(4, 1), {0, 0}, cfg);
    const auto g = coulomb::solve_ground(PotentialSpec::coulomb_power(4, 1), 0, cfg);
    CHECK(std::abs(cp.energy - g.energy) <= 1e-9 * std::abs(g.energy));
    const auto es = solve_excited(PotentialSpec::escp(1, 0.1), {0, 0}, cfg);
    const auto ge = escp::solve_escp(PotentialSpec::escp(1, 0.1), 0, cfg);
    CHECK(std::abs(es.energy - ge.energy) <= 1e-9 * std::abs(ge.energy));
}

TEST_CASE("first radial excitations") {
    const double h2s = solve_excited(PotentialSpec::coulomb_power(0, 1), {0, 1}).energy;
    CHECK(std::abs(h2s + 0.125) <= 0.02 * 0.125);
    for (auto spec : {PotentialSpec::coulomb_power(4, 1), PotentialSpec::escp(1, 0.1)}) {
        const double e = solve_excited(spec, {0, 1}).energy;
        const double ref = oracle::reference_energy(spec, {0, 1}).energy;
        CHECK(std::abs(e - ref) <= 0.03 * std::abs(ref));
    }
}

}
