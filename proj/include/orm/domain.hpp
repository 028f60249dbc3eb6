#pragma once

// Value types shared by the solvers and the CLI.
//
// Units: the Coulomb+power solver uses hbar = m = 1, so pure Coulomb gives
// E = -1/2 for the ground state. The screened-Coulomb solver keeps the E/2
// convention of its radial equation, so pure Coulomb gives E = -1/(l+1)^2.

#include <cstddef>
#include <string>
#include <string_view>

#include "json.hpp"

namespace orm {

enum class PotentialKind { CoulombPower, Escp };

std::string_view kind_name(PotentialKind kind) noexcept;
PotentialKind parse_kind(std::string_view name);

/// V(r) = -1/r + g r^nu  (CoulombPower)  or  -1/r + B e^{-cr}/r  (Escp).
struct PotentialSpec {
    PotentialKind kind = PotentialKind::CoulombPower;
    double g = 0.0;
    double nu = 1.0;
    double B = 0.0;
    double c = 0.0;

    static PotentialSpec coulomb_power(double g, double nu) {
        return {PotentialKind::CoulombPower, g, nu, 0.0, 0.0};
    }
    static PotentialSpec escp(double B, double c) { return {PotentialKind::Escp, 0.0, 1.0, B, c}; }

    bool operator==(const PotentialSpec&) const = default;
};

struct QuantumState {
    int l = 0;
    int n_r = 0;
    bool operator==(const QuantumState&) const = default;
};

/// d is derived from (l, rho); omega = Z^{1/rho}.
struct OrmParams {
    double rho = 1.0;
    double d = 4.0;
    double Z = 1.0;

    static OrmParams make(int l, double rho, double Z);
    double omega() const;
};

struct SolverConfig {
    double rho_lo = 0.05;
    double rho_hi = 2.0;
    double root_tol = 1e-12;
    double min_tol = 1e-8;
    std::size_t quad_order = 200;
    std::size_t series_cap = 60;
    double series_tol = 1e-12;

    bool operator==(const SolverConfig&) const = default;
};

struct SolveResult {
    double energy = 0.0;
    double rho_opt = 0.0;
    double Z = 0.0;
    double orc_residual = 0.0;
    std::size_t evaluations = 0;
    bool edge_pinned = false;
    bool accuracy_warning = false;
    bool no_reliable_bound_state = false;

    bool operator==(const SolveResult&) const = default;
};

/// A checked (spec, state, config) triple.
struct Problem {
    PotentialSpec spec;
    QuantumState state;
    SolverConfig config;

    bool operator==(const Problem&) const = default;
};

/// Returns the bundle unchanged, or throws ValidationError naming the first
/// violated invariant.
Problem validate(const PotentialSpec& spec, const QuantumState& state, const SolverConfig& config);

/// Flat "key=value" lines, one per field, with shortest round-trip numbers.
std::string to_key_value(const Problem& p);
std::string to_key_value(const SolveResult& r);

/// Parses the output of to_key_value. Unknown keys, missing '=' or bad numbers
/// throw ValidationError. The result is validated.
Problem parse_problem(std::string_view text);

/// Applies "key=value" lines (blank lines and '#' comments allowed) to a config.
SolverConfig apply_config_overrides(SolverConfig base, std::string_view text);

nlohmann::json to_json(const Problem& p);
nlohmann::json to_json(const SolveResult& r);
Problem problem_from_json(const nlohmann::json& j);

/// Shortest decimal string that reads back to the same double.
std::string format_roundtrip(double x);

/// printf "%.10g": the fixed report format.
std::string format_report(double x);

}  // namespace orm
