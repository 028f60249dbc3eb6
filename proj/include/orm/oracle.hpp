#pragma once

// Independent checks: a Numerov shooting solver for the radial equation and a
// quadrature engine for matrix elements in the d-dimensional oscillator basis.

#include <cstddef>
#include <functional>

#include "orm/domain.hpp"

namespace orm::oracle {

/// Log-uniform grid r = e^x on [r_min, r_max] with step h in x.
struct RadialGrid {
    double r_min = 1e-6;
    double r_max = 40.0;
    double h = 4e-3;

    std::size_t nodes() const;
};

/// Standard: -u''/2 + (l(l+1)/2r^2 + V) u = E u.
/// EscpHalf: the same equation solved for E/2; the reported energy is doubled.
enum class Convention { Standard, EscpHalf };

struct OracleOptions {
    RadialGrid grid;           // starting grid
    bool adaptive = true;      // grow r_max by a WKB estimate and halve h until converged
    double h_tol = 1e-10;      // stop halving once |E(h) - E(h/2)| < h_tol max(1, |E|)
    double decay_target = 20;  // ∫ kappa dr required beyond the outer turning point
    double r_max_cap = 2000.0;
};

struct OracleResult {
    double energy = 0.0;
    RadialGrid grid;           // final grid
    double h_change = 0.0;     // |E(h) - E(2h)| at the final grid
};

/// k-th eigenvalue (k = number of radial nodes) of the potential V at angular
/// momentum l. Throws NumericalError::NoBoundState if the level is not below
/// the threshold V(r_max) of the final box.
OracleResult numerov_eigenvalue(const std::function<double(double)>& V, int l, int k,
                                Convention convention, const OracleOptions& opts = {});

/// Eigenvalue on a fixed grid, no adaptation.
double numerov_fixed(const std::function<double(double)>& V, int l, int k, const RadialGrid& grid);

/// The radial potential of a spec in the units of its solver (ESCP: B/2 e^{-cr}/r).
std::function<double(double)> potential_function(const PotentialSpec& spec);

/// Reference energy of the spec's (l, n_r) level in the solver's convention.
OracleResult reference_energy(const PotentialSpec& spec, const QuantumState& state,
                              const OracleOptions& opts = {});

/// |n> of the d-dimensional oscillator, as a function of t = omega q^2.
struct OscillatorBasisState {
    int n = 0;
    double d = 3.0;
    double omega = 1.0;
};

/// Normalized radial polynomial: the states are P_n(t) with
/// ∫ t^{d/2-1} e^{-t} P_m P_n dt = delta_mn.
double basis_polynomial(int n, double d, double t);

/// <m| f(q) |n> by exp-sinh quadrature (order doubled until the relative change
/// is below 1e-13, at most three times).
double basis_matrix_element(const std::function<double(double)>& f, const OscillatorBasisState& m,
                            const OscillatorBasisState& n);

/// <n| f(q) |n>.
double basis_expectation(const std::function<double(double)>& f, const OscillatorBasisState& state);

}  // namespace orm::oracle
