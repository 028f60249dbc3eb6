#include "orm/escp.hpp"

#include <cmath>
#include <limits>

#include "orm/error.hpp"
#include "orm/kernels.hpp"
#include "orm/orm_core.hpp"

namespace orm::escp {
namespace {

constexpr std::size_t kZScanPoints = 64;
constexpr double kZScanDecades = 9.0;

struct Gammas {
    double a;       // 2rho + 2rho l
    double lg_a;    // ln Gamma(a)
    double lg_d1;   // ln Gamma(2 + rho + 2rho l) = ln Gamma(d/2 + 1)
    double lg_e;    // ln Gamma(3rho + 2rho l)  = ln Gamma(d/2 + 2rho - 1)
};

Gammas gammas(double rho, int l) {
    const double a = 2 * rho + 2 * rho * l;
    return {a, numerics::log_gamma(a), numerics::log_gamma(2 + rho + 2 * rho * l),
            numerics::log_gamma(3 * rho + 2 * rho * l)};
}

// Pure-Coulomb root, above which the residual is positive.
double coulomb_root(double rho, const Gammas& g) {
    return 4 * rho * rho * std::exp(g.lg_a - g.lg_d1);
}

bool screened_off(double B, double c) { return B == 0.0 || std::isinf(c); }

}  // namespace

double screened_integral(double a, double rho, double t, const numerics::Quadrature& q) {
    if (!(a > 0.0) || !(rho > 0.0) || !(t >= 0.0)) throw ValidationError("a > 0, rho > 0, t ≥ 0");
    if (t == 0.0) return std::exp(numerics::log_gamma(a));
    if (std::isinf(t)) return 0.0;
    kernels::ExpMomentParams p;
    if (q.family() == numerics::QuadratureFamily::ExpSinh) {
        p.power = a - 1;
        p.linear = 1.0;
    } else {
        p.power = a - 1 - q.alpha();
        p.linear = 0.0;
    }
    p.screen = t;
    p.rho = rho;
    return kernels::exp_moment_sum(q.log_nodes(), q.nodes(), q.log_weights(), p);
}

numerics::IntegralResult screened_integral_checked(double a, double rho, double t,
                                                   const numerics::Quadrature& q) {
    numerics::IntegralResult r;
    const double coarse = screened_integral(a, rho, t, q);
    r.value = screened_integral(a, rho, t, q.refined());
    const double scale = std::max(std::abs(r.value), std::numeric_limits<double>::min());
    r.refined_rel_diff = std::abs(coarse - r.value) / scale;
    r.accuracy_warning = r.refined_rel_diff > 1e-8;
    return r;
}

double escp_z_residual(double Z, double rho, int l, double B, double c,
                       const numerics::Quadrature& q) {
    const Gammas g = gammas(rho, l);
    double r = Z * Z - 4 * Z * rho * rho * std::exp(g.lg_a - g.lg_d1);
    if (!screened_off(B, c)) {
        const double t = c / Z;
        r += 2 * B * rho * rho * std::exp(-g.lg_d1) *
             (Z * screened_integral(g.a, rho, t, q) + c * screened_integral(g.a + rho, rho, t, q));
    }
    return r;
}

double escp_energy_at_Z(double Z, double rho, int l, double B, double c,
                        const numerics::Quadrature& q) {
    const Gammas g = gammas(rho, l);
    double E = Z * Z / (4 * rho * rho) * std::exp(g.lg_d1 - g.lg_e) - 2 * Z * std::exp(g.lg_a - g.lg_e);
    if (!screened_off(B, c)) E += Z * B * std::exp(-g.lg_e) * screened_integral(g.a, rho, c / Z, q);
    return E;
}

coulomb::EnergyAtRho escp_energy_at_rho(double rho, int l, double B, double c,
                                        const SolverConfig& config) {
    const auto& q = numerics::cached_exp_sinh(config.quad_order);
    const Gammas g = gammas(rho, l);
    const double zc = coulomb_root(rho, g);
    if (screened_off(B, c)) return {escp_energy_at_Z(zc, rho, l, B, c, q), zc};

    // The residual is a positive multiple of dE/dZ: every - to + crossing is a
    // local minimum of E(Z). All crossings lie below the pure-Coulomb root.
    auto f = [&](double Z) { return escp_z_residual(Z, rho, l, B, c, q); };
    coulomb::EnergyAtRho best{0.0, 0.0};
    double z_prev = zc * std::pow(10.0, -kZScanDecades);
    double f_prev = f(z_prev);
    for (std::size_t i = 1; i <= kZScanPoints; ++i) {
        const double z = zc * std::pow(10.0, -kZScanDecades * (1.0 - double(i) / kZScanPoints));
        const double fz = i == kZScanPoints ? f(zc) : f(z);
        if (f_prev < 0.0 && fz >= 0.0) {
            const double root = fz == 0.0 ? z : numerics::find_root(f, z_prev, z, {config.root_tol, 200});
            const double E = escp_energy_at_Z(root, rho, l, B, c, q);
            if (E < best.E) best = {E, root};
        }
        z_prev = z;
        f_prev = fz;
    }
    return best;
}

SolveResult solve_escp(const PotentialSpec& spec, int l, const SolverConfig& config) {
    validate(spec, {l, 0}, config);
    if (spec.kind != PotentialKind::Escp) throw ValidationError("solve_escp expects an escp spec");
    const auto m = numerics::minimize_global(
        [&](double rho) { return escp_energy_at_rho(rho, l, spec.B, spec.c, config).E; },
        config.rho_lo, config.rho_hi, config.min_tol);

    SolveResult out;
    const auto at = escp_energy_at_rho(m.x, l, spec.B, spec.c, config);
    out.energy = at.E;
    out.rho_opt = m.x;
    out.Z = at.Z;
    out.evaluations = m.evaluations;
    out.edge_pinned = m.pinned();
    out.no_reliable_bound_state = std::abs(at.E) < 1e-6;
    if (at.Z > 0.0) {
        out.orc_residual = core::orc_residual(spec, l, m.x, std::pow(at.Z, 1 / m.x), at.E,
                                              config.quad_order);
        if (!screened_off(spec.B, spec.c)) {
            const auto& q = numerics::cached_exp_sinh(config.quad_order);
            const double a = 2 * m.x + 2 * m.x * l;
            const double t = spec.c / at.Z;
            out.accuracy_warning = screened_integral_checked(a, m.x, t, q).accuracy_warning ||
                                   screened_integral_checked(a + m.x, m.x, t, q).accuracy_warning;
        }
    }
    return out;
}

}  // namespace orm::escp
