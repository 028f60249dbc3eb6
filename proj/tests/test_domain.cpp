#include <cmath>
#include <limits>

#include "doctest.h"
#include "orm/domain.hpp"
#include "orm/error.hpp"

using namespace orm;

namespace {

std::string invariant_of(const PotentialSpec& s, const QuantumState& q, const SolverConfig& c = {}) {
    try {
        validate(s, q, c);
    } catch (const ValidationError& e) {
        return e.invariant();
    }
    return "";
}

}  // namespace

TEST_SUITE("domain") {

TEST_CASE("validate names the violated invariant") {
    CHECK(invariant_of(PotentialSpec::coulomb_power(-1, 1), {}) == "g ≥ 0");
    CHECK(invariant_of(PotentialSpec::coulomb_power(1, 0), {}) == "ν > 0");
    CHECK(invariant_of(PotentialSpec::escp(-0.5, 1), {}) == "B ≥ 0");
    CHECK(invariant_of(PotentialSpec::escp(1, -1), {}) == "c ≥ 0");
    CHECK(invariant_of(PotentialSpec::escp(1, 1), {-1, 0}) == "l ≥ 0");
    CHECK(invariant_of(PotentialSpec::coulomb_power(1, 1), {0, 0}).empty());
    CHECK(invariant_of(PotentialSpec::coulomb_power(std::nan(""), 1), {}) != "");
}

TEST_CASE("OrmParams derives d and omega") {
    const auto p = OrmParams::make(2, 0.5, 3.0);
    CHECK(p.d == doctest::Approx(2 + 2 * 0.5 + 4 * 0.5 * 2));
    CHECK(p.omega() == doctest::Approx(9.0));
}

TEST_CASE("kind names round-trip") {
    CHECK(parse_kind(kind_name(PotentialKind::Escp)) == PotentialKind::Escp);
    CHECK(parse_kind("coulomb-power") == PotentialKind::CoulombPower);
    CHECK_THROWS_AS(parse_kind("yukawa"), ValidationError);
}

TEST_CASE("key=value serialization round-trips losslessly") {
    Problem p{PotentialSpec::coulomb_power(0.976562, 1.0 / 3), {2, 1}, {}};
    p.config.rho_hi = 1.7;
    p.config.series_tol = 3e-13;
    CHECK(parse_problem(to_key_value(p)) == p);
    Problem e{PotentialSpec::escp(4, 0.005), {0, 0}, {}};
    CHECK(parse_problem(to_key_value(e)) == e);
}

TEST_CASE("json serialization round-trips losslessly") {
    Problem p{PotentialSpec::escp(1.0, 0.1), {1, 2}, {}};
    p.config.quad_order = 333;
    CHECK(problem_from_json(to_json(p)) == p);
    CHECK(problem_from_json(nlohmann::json::parse(to_json(p).dump())) == p);
}

TEST_CASE("parse_problem rejects malformed input") {
    CHECK_THROWS_AS(parse_problem("kind=escp\nbogus=1\n"), ValidationError);
    CHECK_THROWS_AS(parse_problem("kind=escp\nB\n"), ValidationError);
    CHECK_THROWS_AS(parse_problem("kind=escp\nB=abc\n"), ValidationError);
}

TEST_CASE("config overrides accept comments and blank lines") {
    const auto c = apply_config_overrides({}, "# tighter\n\nrho_lo=0.1\nquad_order=400\n");
    CHECK(c.rho_lo == 0.1);
    CHECK(c.quad_order == 400);
    CHECK(c.rho_hi == SolverConfig{}.rho_hi);
    CHECK_THROWS_AS(apply_config_overrides({}, "rho=1"), ValidationError);
}

TEST_CASE("number formatting") {
    CHECK(format_roundtrip(0.1) == "0.1");
    CHECK(std::stod(format_roundtrip(1.0 / 3)) == 1.0 / 3);
    CHECK(format_report(1.0 / 3) == "0.3333333333");
    CHECK(format_report(std::numeric_limits<double>::infinity()) == "inf");
}

}
