#pragma once

// Zeroth-order solver for V = -1/r + g r^nu (hbar = m = 1).

#include "orm/domain.hpp"

namespace orm::coulomb {

/// Gamma ratios at d = 2 + 2rho + 4rho l, all over Gamma(d/2 + 2rho - 1).
struct CPRatios {
    double R0 = 0.0;  // Gamma(d/2 + 1)
    double R1 = 0.0;  // Gamma(d/2 + rho - 1)
    double R2 = 0.0;  // Gamma(d/2 + 2rho + nu rho - 1)

    static CPRatios at(double rho, int l, double nu);
};

/// Z^{2+nu} - Z^{1+nu} 4rho^2 R1/R0 - 4 g nu rho^2 R2/R0. A positive multiple of
/// dE/dZ, with exactly one positive root for g, nu > 0.
double z_residual(double Z, double rho, int l, double g, double nu);

/// E = Z^2 R0/(8 rho^2) - Z R1 + g R2 / Z^nu for a fixed Z.
double energy_at_Z(double Z, double rho, int l, double g, double nu);

struct EnergyAtRho {
    double E = 0.0;
    double Z = 0.0;
};

EnergyAtRho energy_at_rho(double rho, int l, double g, double nu, const SolverConfig& config = {});

SolveResult solve_ground(const PotentialSpec& spec, int l, const SolverConfig& config = {});

struct StrongCoupling {
    double C = 0.0;
    double rho_opt = 0.0;
};

/// E(g) -> C g^{2/(2+nu)} as g -> infinity.
StrongCoupling strong_coupling_constant(double nu, int l, const SolverConfig& config = {});

}  // namespace orm::coulomb
