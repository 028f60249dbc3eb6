#pragma once

// Potential-independent pieces of the oscillator representation: the r = q^{2rho}
// bookkeeping, the split eps0(E; omega) = A - E*B, normal ordering of q^{2n},
// and the oscillator representation condition d eps0/d omega = 0.

#include <array>
#include <vector>

#include "orm/domain.hpp"

namespace orm::core {

/// d = 2 + 2 rho (2l + 1).
double effective_dimension(int l, double rho);

/// K(l, rho, D) = ((D-2)^2 - 4 rho^2 (2l+1)^2) / 4; zero for D from effective_dimension.
double k_coefficient(int l, double rho, double D);

/// coeff * q^{2 tau} * exp(-screen * q^{2 rho}). With carries_E the coefficient
/// multiplies E (the term is -|coeff| E q^{2tau} in the Hamiltonian).
struct TransformedTerm {
    double coeff = 0.0;
    double tau = 0.0;
    bool carries_E = false;
    double screen = 0.0;
    double rho = 1.0;  // only meaningful when screen != 0
};

std::vector<TransformedTerm> transform_potential(const PotentialSpec& spec, int l, double rho);

/// <0| q^{2tau} |0> = omega^{-tau} Gamma(d/2+tau)/Gamma(d/2).
double vacuum_moment(double tau, double d, double omega);

/// A, B and their omega-derivatives.
struct EpsilonSplit {
    double A = 0.0;
    double B = 0.0;
    double dA = 0.0;
    double dB = 0.0;
};

EpsilonSplit epsilon0_split(const PotentialSpec& spec, int l, double rho, double omega,
                            std::size_t quad_order = 200);

/// eps0(E; omega) = A - E B.
double epsilon0(const PotentialSpec& spec, int l, double rho, double omega, double E,
                std::size_t quad_order = 200);

/// q^{2n} = c0 + c1 :q^2: + c2 :q^4: + c3 :q^6: for n in {1,2,3}.
std::array<double, 4> normal_order_power(int n, double d, double omega);

/// |d eps0/d omega| by central difference at (rho, omega, E), divided by the sum
/// of magnitudes of the separate term derivatives.
double orc_residual(const PotentialSpec& spec, int l, double rho, double omega, double E,
                    std::size_t quad_order = 200);

}  // namespace orm::core
