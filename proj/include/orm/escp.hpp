#pragma once

// Zeroth-order solver for the screened Coulomb potential V = -1/r + B e^{-cr}/r.
// Energies are in the E/2 convention: pure Coulomb gives -1/(l+1)^2.

#include "orm/coulomb_power.hpp"
#include "orm/domain.hpp"
#include "orm/numerics.hpp"

namespace orm::escp {

/// J(a, rho, t) = ∫_0^∞ u^{a-1} exp(-u - t u^rho) du on the given exp-sinh rule.
double screened_integral(double a, double rho, double t, const numerics::Quadrature& q);

/// Same, with an order-doubling check; the warning trips above 1e-8.
numerics::IntegralResult screened_integral_checked(double a, double rho, double t,
                                                   const numerics::Quadrature& q);

/// Z^2 - 4Z rho^2 G(a)/G(2+rho+2rho l) + 2B rho^2/G(2+rho+2rho l) (Z J(a) + c J(a+rho)),
/// a = 2rho + 2rho l, J at t = c/Z.
double escp_z_residual(double Z, double rho, int l, double B, double c,
                       const numerics::Quadrature& q);

/// Energy for a fixed Z (no root solve).
double escp_energy_at_Z(double Z, double rho, int l, double B, double c,
                        const numerics::Quadrature& q);

/// Solves the Z equation and returns (E, Z). Among several stable roots the one
/// with the lowest energy is taken. When the equation has no stable root the
/// state has merged with the threshold and (0, 0) is returned.
coulomb::EnergyAtRho escp_energy_at_rho(double rho, int l, double B, double c,
                                        const SolverConfig& config = {});

SolveResult solve_escp(const PotentialSpec& spec, int l, const SolverConfig& config = {});

}  // namespace orm::escp
