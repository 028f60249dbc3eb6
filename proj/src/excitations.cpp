#include "orm/excitations.hpp"

#include <cmath>
#include <limits>

#include "orm/coulomb_power.hpp"
#include "orm/error.hpp"
#include "orm/escp.hpp"
#include "orm/numerics.hpp"
#include "orm/orm_core.hpp"

namespace orm::excitations {
namespace {

using numerics::log_gamma;

// Σ_s (-1)^k 2^{2s-k} / Γ(n-s+1) · Γ(k+n-s+d/2) / (Γ²(k-s+1) Γ(2s-k+1)), each term
// divided by Γ(n+d/2) Γ(k+d/2) to keep the magnitudes tame. Terms with a
// non-positive integer Γ argument in the denominator vanish.
double inner_sum(int n, int k, double d) {
    const double h = d / 2;
    const double lg_norm = log_gamma(n + h) + log_gamma(k + h);
    double sum = 0.0;
    for (int s = 0; s <= n; ++s) {
        if (k - s + 1 <= 0 || 2 * s - k + 1 <= 0) continue;
        const double lg = log_gamma(k + n - s + h) - 2 * log_gamma(k - s + 1.0) -
                          log_gamma(2 * s - k + 1.0) - log_gamma(n - s + 1.0) - lg_norm +
                          (2 * s - k) * std::log(2.0);
        sum += std::exp(lg);
    }
    return (k % 2 == 0) ? sum : -sum;
}

// L_n^{(alpha)}(t) by the three-term recurrence.
double laguerre(int n, double alpha, double t) {
    if (n == 0) return 1.0;
    double prev = 1.0, cur = 1.0 + alpha - t;
    for (int k = 1; k < n; ++k) {
        const double next = ((2 * k + 1 + alpha - t) * cur - (k + alpha) * prev) / (k + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

double zeroth_order_omega(const PotentialSpec& spec, int l, double rho, const SolverConfig& config) {
    double Z = 0.0;
    if (spec.kind == PotentialKind::CoulombPower) {
        Z = coulomb::energy_at_rho(rho, l, spec.g, spec.nu, config).Z;
    } else {
        Z = escp::escp_energy_at_rho(rho, l, spec.B, spec.c, config).Z;
        if (!(Z > 0.0)) Z = 4 * rho * rho * numerics::gamma_ratio(2 * rho + 2 * rho * l, 2 + rho + 2 * rho * l);
    }
    return std::pow(Z, 1 / rho);
}

constexpr double kScanHalfWidth = 8.0;  // in ln omega around the zeroth-order omega
constexpr double kScanStep = 0.05;

}  // namespace

double norm_const(int n, double d) {
    if (n < 0 || !(d > 0.0)) throw ValidationError("n ≥ 0 and d > 0");
    const double lg = log_gamma(d / 2) - n * std::log(4.0) - log_gamma(n + 1.0) - log_gamma(d / 2 + n);
    return std::exp(0.5 * lg);
}

double t_n(int n, double x, double d) {
    if (n < 0 || !(d > 0.0) || !(x >= 0.0)) throw ValidationError("n ≥ 0, x ≥ 0, d > 0");
    if (n == 0 || x == 0.0) return 0.0;
    const double h = d / 2;
    const double pre = std::exp(log_gamma(1.0 + n));
    double sum = 0.0;
    for (int k = 2; k <= 2 * n; ++k) {
        // x^k / (1+x)^{k+d/2}, times the Γ(k+d/2) that inner_sum divided out.
        const double lg = k * std::log(x) - (k + h) * std::log1p(x) + log_gamma(k + h);
        sum += std::exp(lg) * inner_sum(n, k, d);
    }
    return pre * sum;
}

double q_n(int n, double tau, double d) {
    if (n < 0 || !(d > 0.0)) throw ValidationError("n ≥ 0 and d > 0");
    if (!(d / 2 + tau > 0.0)) throw ValidationError("d/2 + tau > 0");
    if (n == 0) return 0.0;
    double sum = 0.0;
    for (int k = 2; k <= 2 * n; ++k) sum += numerics::pochhammer(-tau, k) * inner_sum(n, k, d);
    return std::exp(log_gamma(d / 2 + tau) + log_gamma(1.0 + n)) * sum;
}

std::array<double, 3> power_matrix_elements(int n, double d, double omega) {
    if (!(omega > 0.0)) throw ValidationError("omega > 0");
    return {2.0 * n / omega, n * (d + 6.0 * n - 4) / (omega * omega),
            2.0 * n * (n - 1) * (3 * d + 10.0 * n - 8) / (omega * omega * omega)};
}

double e0_excitation(int n, double omega) { return 2.0 * n * omega; }

SeriesResult screened_series(int n, double d, double rho, double omega, double c, std::size_t cap,
                             double tol) {
    SeriesResult r;
    double coeff = 1.0;  // (-c)^k / k!
    int small_run = 0;
    bool seen_nonzero = false;  // tau_k in {0, 1} gives exactly zero terms
    for (std::size_t k = 0; k < cap; ++k) {
        if (k > 0) coeff *= -c / static_cast<double>(k);
        const double tau = rho * (1.0 + k) - 1.0;
        const double term = coeff * std::pow(omega, -tau) * q_n(n, tau, d);
        r.value += term;
        r.terms = k + 1;
        seen_nonzero = seen_nonzero || term != 0.0;
        small_run = std::abs(term) <= tol * std::abs(r.value) ? small_run + 1 : 0;
        if ((seen_nonzero && small_run >= 2) || c == 0.0) {
            r.converged = true;
            return r;
        }
    }
    return r;
}

double screened_quadrature(int n, double d, double rho, double omega, double c,
                           std::size_t quad_order) {
    const double h = d / 2;
    const double a = h + rho - 1;
    const double ln_om = std::log(omega);
    const double norm_n = std::exp(log_gamma(n + 1.0) - log_gamma(n + h));
    const double norm_0 = std::exp(-log_gamma(h));
    const auto& q = numerics::cached_exp_sinh(quad_order);
    const auto lu = q.log_nodes();
    const auto u = q.nodes();
    const auto lw = q.log_weights();
    double sum = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double t = u[i];
        const double e = lw[i] + (a - 1) * lu[i] - t + (1 - rho) * ln_om -
                         c * std::exp(rho * (lu[i] - ln_om));
        if (e < -745.0) continue;
        const double L = laguerre(n, h - 1, t);
        const double bracket = L * L * norm_n - (1.0 + (4.0 * n / d) * (t - h)) * norm_0;
        sum += std::exp(e) * bracket;
    }
    return sum;
}

ExcitationSplit excitation_split(const PotentialSpec& spec, int l, int n, double rho, double omega,
                                 const SolverConfig& config) {
    const double d = core::effective_dimension(l, rho);
    const core::EpsilonSplit s = core::epsilon0_split(spec, l, rho, omega, config.quad_order);
    ExcitationSplit out;
    out.A = s.A;
    out.B = s.B;
    out.dA = s.dA;
    out.dB = s.dB;
    out.A1 = s.A + e0_excitation(n, omega);
    out.B1 = s.B;
    if (n == 0) return out;
    for (const auto& t : core::transform_potential(spec, l, rho)) {
        if (t.coeff == 0.0) continue;
        double diag = 0.0;
        if (t.screen == 0.0) {
            diag = std::pow(omega, -t.tau) * q_n(n, t.tau, d);
        } else if (!std::isinf(t.screen)) {
            SeriesResult sr;
            if (t.screen * std::pow(omega, -t.rho) <= 5.0)
                sr = screened_series(n, d, t.rho, omega, t.screen, config.series_cap, config.series_tol);
            if (sr.converged) {
                diag = sr.value;
            } else {
                diag = screened_quadrature(n, d, t.rho, omega, t.screen, config.quad_order);
                out.series_fallback = true;
            }
        }
        if (t.carries_E)
            out.B1 -= t.coeff * diag;
        else
            out.A1 += t.coeff * diag;
    }
    return out;
}

ExcitedAtRho excited_at_rho(const PotentialSpec& spec, int l, int n, double rho,
                            const SolverConfig& config) {
    const double center = std::log(zeroth_order_omega(spec, l, rho, config));
    bool fallback = false;
    auto F = [&](double lw) {
        const auto s = excitation_split(spec, l, n, rho, std::exp(lw), config);
        fallback = fallback || s.series_fallback;
        return s.dA - s.A1 / s.B1 * s.dB;
    };
    auto energy = [&](double lw) {
        const auto s = excitation_split(spec, l, n, rho, std::exp(lw), config);
        return s.B1 > 0.0 ? s.A1 / s.B1 : std::numeric_limits<double>::infinity();
    };

    ExcitedAtRho best;
    best.E = std::numeric_limits<double>::infinity();
    auto consider = [&](double lw) {
        const double E = energy(lw);
        if (E < best.E) best = {E, std::exp(lw), true, false};
    };
    const int steps = static_cast<int>(std::lround(2 * kScanHalfWidth / kScanStep));
    double x_prev = center - kScanHalfWidth;
    double f_prev = F(x_prev);
    if (f_prev == 0.0) consider(x_prev);
    for (int i = 1; i <= steps; ++i) {
        const double x = center - kScanHalfWidth + i * kScanStep;
        const double fx = F(x);
        if (fx == 0.0) {
            consider(x);
        } else if (std::isfinite(f_prev) && std::isfinite(fx) && f_prev != 0.0 &&
                   (f_prev < 0.0) != (fx < 0.0)) {
            consider(numerics::find_root(F, x_prev, x, {config.root_tol, 200}));
        }
        x_prev = x;
        f_prev = fx;
    }
    best.series_fallback = fallback;
    return best;
}

SolveResult solve_excited(const PotentialSpec& spec, const QuantumState& state,
                          const SolverConfig& config) {
    validate(spec, state, config);
    const int l = state.l, n = state.n_r;
    const auto m = numerics::minimize_global(
        [&](double rho) { return excited_at_rho(spec, l, n, rho, config).E; }, config.rho_lo,
        config.rho_hi, config.min_tol);
    const ExcitedAtRho at = excited_at_rho(spec, l, n, m.x, config);
    if (!at.found)
        throw NumericalError(NumericalError::Kind::NoSignChange, "no frequency root at the optimum");

    SolveResult out;
    out.energy = at.E;
    out.rho_opt = m.x;
    out.Z = std::pow(at.omega, m.x);
    out.evaluations = m.evaluations;
    out.edge_pinned = m.pinned();
    const auto s = excitation_split(spec, l, n, m.x, at.omega, config);
    out.orc_residual = std::abs(s.dA - at.E * s.dB) / (std::abs(s.dA) + std::abs(at.E * s.dB));
    out.no_reliable_bound_state = spec.kind == PotentialKind::Escp && std::abs(at.E) < 1e-6;
    return out;
}

}  // namespace orm::excitations
