#pragma once

// Radial excitations |n> = C_n (a+a+)^n |0> of the d-dimensional oscillator:
// normalization, diagonal matrix elements of normal-ordered powers, and the
// first-order energy E = min_rho A1/B1 with omega fixed by the ORC.

#include <array>
#include <cstddef>

#include "orm/domain.hpp"

namespace orm::excitations {

/// C_n = sqrt(Gamma(d/2) / (4^n n! Gamma(d/2 + n))).
double norm_const(int n, double d);

/// <n| :e2^{-x q^2}: |n> at omega = 1 (finite double sum, k = 2..2n).
double t_n(int n, double x, double d);

/// <n| :q^{2tau}: |n> at omega = 1 with the vacuum and :q^2: pieces removed.
/// Requires d/2 + tau > 0.
double q_n(int n, double tau, double d);

/// (<:q^2:>, <:q^4:>, <:q^6:>) in |n>.
std::array<double, 3> power_matrix_elements(int n, double d, double omega);

/// <n|H0|n> - <0|H0|0> = 2 n omega.
double e0_excitation(int n, double omega);

/// Diagonal of the normal-ordered remainder of q^{2(rho-1)} e^{-c q^{2rho}}.
struct SeriesResult {
    double value = 0.0;
    std::size_t terms = 0;
    bool converged = false;
};

/// Power series in c with tau_k = rho(1+k) - 1; stops once two consecutive terms
/// fall below tol relative to the running sum, or at `cap` terms.
SeriesResult screened_series(int n, double d, double rho, double omega, double c, std::size_t cap,
                             double tol);

/// Same quantity by direct quadrature over the Laguerre density.
double screened_quadrature(int n, double d, double rho, double omega, double c,
                           std::size_t quad_order);

/// A1 = A + 2 n omega + <n|H_I|n> (non-E part), B1 = B + E-part of <n|H_I|n>.
struct ExcitationSplit {
    double A1 = 0.0;
    double B1 = 0.0;
    double A = 0.0;
    double B = 0.0;
    double dA = 0.0;
    double dB = 0.0;
    bool series_fallback = false;
};

ExcitationSplit excitation_split(const PotentialSpec& spec, int l, int n, double rho, double omega,
                                 const SolverConfig& config = {});

struct ExcitedAtRho {
    double E = 0.0;
    double omega = 0.0;
    bool found = false;
    bool series_fallback = false;
};

/// Solves dA/domega - (A1/B1) dB/domega = 0 for omega and returns E = A1/B1 at
/// the lowest-energy root.
ExcitedAtRho excited_at_rho(const PotentialSpec& spec, int l, int n, double rho,
                            const SolverConfig& config = {});

SolveResult solve_excited(const PotentialSpec& spec, const QuantumState& state,
                          const SolverConfig& config = {});

}  // namespace orm::excitations
