#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "orm/error.hpp"
#include "orm/numerics.hpp"

using namespace orm::numerics;

TEST_SUITE("numerics") {

TEST_CASE("log_gamma matches extended-precision Stirling") {
    for (double x : {0.1, 0.5, 1.0, 1.5, 2.5, 7.25, 33.3, 171.5, 1e4}) {
        const double ref = static_cast<double>(oracle_ref::log_gamma_stirling(x));
        CHECK(log_gamma(x) == doctest::Approx(ref).epsilon(1e-14));
    }
    CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(M_PI)).epsilon(1e-15));
}

TEST_CASE("log_gamma rejects non-positive arguments") {
    CHECK_THROWS_AS(log_gamma(0.0), orm::ValidationError);
    CHECK_THROWS_AS(log_gamma(-1.5), orm::ValidationError);
}

TEST_CASE("gamma_ratio recurrence property") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.05, 60.0);
    for (int i = 0; i < 200; ++i) {
        const double a = u(rng);
        CHECK(gamma_ratio(a + 1, a) == doctest::Approx(a).epsilon(1e-13));
        CHECK(gamma_ratio(a, a) == doctest::Approx(1.0).epsilon(1e-15));
    }
    CHECK(gamma_ratio(5.5, 2.5) == doctest::Approx(4.5 * 3.5 * 2.5).epsilon(1e-14));
}

TEST_CASE("rgamma_int and pochhammer") {
    CHECK(rgamma_int(0) == 0.0);
    CHECK(rgamma_int(-3) == 0.0);
    CHECK(rgamma_int(1) == 1.0);
    CHECK(rgamma_int(5) == doctest::Approx(1.0 / 24));
    CHECK(pochhammer(2.5, 0) == 1.0);
    CHECK(pochhammer(2.5, 3) == doctest::Approx(2.5 * 3.5 * 4.5));
    CHECK(pochhammer(-0.6, 2) == doctest::Approx(-0.6 * 0.4));
}

TEST_CASE("Gauss-Laguerre integrates polynomials exactly") {
    const auto q = Quadrature::gauss_laguerre(30, 0.7);
    CHECK(q.family() == QuadratureFamily::GaussLaguerre);
    CHECK(q.order() == 30);
    // ∫ u^α e^{-u} u^k du = Γ(α+k+1)
    for (int k = 0; k <= 20; ++k) {
        const double got = q.weighted_sum([k](double u) { return std::pow(u, k); });
        CHECK(got == doctest::Approx(std::exp(log_gamma(1.7 + k))).epsilon(1e-11));
    }
}

TEST_CASE("exp-sinh agrees with adaptive Gauss-Kronrod") {
    const auto q = Quadrature::exp_sinh(200);
    auto f = [](double u) { return std::pow(u, -0.4) * std::exp(-u - 5.0 * std::pow(u, 0.45)); };
    const auto r = integrate_halfline(f, q, true);
    CHECK_FALSE(r.accuracy_warning);
    CHECK(r.value == doctest::Approx(oracle_ref::halfline(f)).epsilon(1e-11));
}

TEST_CASE("refined exp-sinh is nested and doubles the order") {
    const auto q = Quadrature::exp_sinh(100);
    const auto r = q.refined();
    CHECK(r.order() >= 2 * q.order() - 1);
    CHECK(&cached_exp_sinh(100) == &cached_exp_sinh(100));
}

TEST_CASE("integrate_halfline raises on non-finite integrand") {
    const auto q = Quadrature::exp_sinh(50);
    CHECK_THROWS_AS(integrate_halfline([](double) { return std::nan(""); }, q, false), orm::NumericalError);
}

TEST_CASE("find_root on the cubic Z^3 - 2Z^2 - 48 agrees with bisection") {
    auto g = [](double z) { return z * z * z - 2 * z * z - 48; };
    const double ref = oracle_ref::bisect(g, 0.0, 10.0);
    CHECK(ref == doctest::Approx(4.44).epsilon(1e-2));
    CHECK(find_root(g, 0.0, 10.0) == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("find_root is idempotent on its own result") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.1, 5.0);
    for (int i = 0; i < 50; ++i) {
        const double c = u(rng);
        auto g = [c](double x) { return std::exp(x) - c; };
        const double r1 = find_root(g, -5.0, 5.0);
        const double eps = 1e-9 * std::max(1.0, std::abs(r1));
        const double r2 = find_root(g, r1 - eps, r1 + eps);
        CHECK(r2 == doctest::Approx(r1).epsilon(1e-12));
    }
}

TEST_CASE("find_root reports a missing sign change") {
    try {
        find_root([](double x) { return x * x + 1; }, -1.0, 1.0);
        FAIL("expected NumericalError");
    } catch (const orm::NumericalError& e) {
        CHECK(e.kind() == orm::NumericalError::Kind::NoSignChange);
    }
}

TEST_CASE("minimize_scalar locates interior and edge minima") {
    const auto m = minimize_scalar([](double x) { return (x - 1.3) * (x - 1.3) + 2; }, 0.0, 3.0);
    CHECK(m.x == doctest::Approx(1.3).epsilon(1e-7));
    CHECK(m.f == doctest::Approx(2.0));
    CHECK_FALSE(m.pinned());
    const auto e = minimize_scalar([](double x) { return x; }, 0.5, 3.0);
    CHECK(e.at_lower_edge);
    CHECK(e.x == doctest::Approx(0.5).epsilon(1e-7));
}

TEST_CASE("minimize_global skips non-finite cells and finds the deeper well") {
    auto f = [](double x) {
        if (x < 0.3) return std::numeric_limits<double>::infinity();
        return std::cos(3 * x) + 0.1 * x;
    };
    const auto m = minimize_global(f, 0.0, 4.0);
    CHECK(m.x == doctest::Approx((M_PI - std::asin(1.0 / 30)) / 3).epsilon(1e-6));
}

}
