#include "orm/coulomb_power.hpp"

#include <cmath>

#include "orm/error.hpp"
#include "orm/numerics.hpp"
#include "orm/orm_core.hpp"

namespace orm::coulomb {
namespace {

// Z - k1 - k2 Z^{-1-nu}: the residual divided by Z^{1+nu}, increasing in Z.
struct ScaledResidual {
    double k1, k2, nu;
    double operator()(double Z) const { return Z - k1 - k2 * std::pow(Z, -1.0 - nu); }
};

ScaledResidual scaled_residual(double rho, int l, double g, double nu) {
    const CPRatios r = CPRatios::at(rho, l, nu);
    const double r2 = rho * rho;
    return {4 * r2 * r.R1 / r.R0, 4 * g * nu * r2 * r.R2 / r.R0, nu};
}

}  // namespace

CPRatios CPRatios::at(double rho, int l, double nu) {
    const double h = core::effective_dimension(l, rho) / 2;
    const double base = h + 2 * rho - 1;
    return {numerics::gamma_ratio(h + 1, base), numerics::gamma_ratio(h + rho - 1, base),
            numerics::gamma_ratio(h + 2 * rho + nu * rho - 1, base)};
}

double z_residual(double Z, double rho, int l, double g, double nu) {
    const ScaledResidual s = scaled_residual(rho, l, g, nu);
    return std::pow(Z, 2 + nu) - std::pow(Z, 1 + nu) * s.k1 - s.k2;
}

double energy_at_Z(double Z, double rho, int l, double g, double nu) {
    const CPRatios r = CPRatios::at(rho, l, nu);
    return Z * Z * r.R0 / (8 * rho * rho) - Z * r.R1 + g * r.R2 * std::pow(Z, -nu);
}

EnergyAtRho energy_at_rho(double rho, int l, double g, double nu, const SolverConfig& config) {
    const ScaledResidual f = scaled_residual(rho, l, g, nu);
    double Z = f.k1;
    if (g > 0.0) {
        double hi = std::max(2 * f.k1, 1.0);
        while (f(hi) < 0.0) {
            hi *= 2;
            if (hi > 1e12)
                throw NumericalError(NumericalError::Kind::NoSignChange, "Z bracket exceeded 1e12");
        }
        Z = numerics::find_root(f, f.k1, hi, {config.root_tol, 200});
    }
    return {energy_at_Z(Z, rho, l, g, nu), Z};
}

SolveResult solve_ground(const PotentialSpec& spec, int l, const SolverConfig& config) {
    validate(spec, {l, 0}, config);
    if (spec.kind != PotentialKind::CoulombPower)
        throw ValidationError("solve_ground expects a coulomb-power spec");
    const auto m = numerics::minimize_global(
        [&](double rho) { return energy_at_rho(rho, l, spec.g, spec.nu, config).E; }, config.rho_lo,
        config.rho_hi, config.min_tol);

    SolveResult out;
    const EnergyAtRho at = energy_at_rho(m.x, l, spec.g, spec.nu, config);
    out.energy = at.E;
    out.rho_opt = m.x;
    out.Z = at.Z;
    out.evaluations = m.evaluations;
    out.edge_pinned = m.pinned();
    out.orc_residual = core::orc_residual(spec, l, m.x, std::pow(at.Z, 1 / m.x), at.E,
                                          config.quad_order);
    return out;
}

StrongCoupling strong_coupling_constant(double nu, int l, const SolverConfig& config) {
    if (!(nu > 0.0)) throw ValidationError("ν > 0");
    auto C = [&](double rho) {
        const double h = core::effective_dimension(l, rho) / 2;
        const double r2 = rho * rho;
        const double pre = (0.5 + 1 / nu) * numerics::gamma_ratio(h + 1, h + 2 * rho - 1) / (4 * r2);
        const double inner = 4 * nu * r2 * numerics::gamma_ratio(h + 2 * rho + nu * rho - 1, h + 1);
        return pre * std::pow(inner, 2 / (2 + nu));
    };
    const auto m = numerics::minimize_global(C, config.rho_lo, config.rho_hi, config.min_tol);
    return {m.f, m.x};
}

}  // namespace orm::coulomb
