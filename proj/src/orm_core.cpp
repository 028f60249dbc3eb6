#include "orm/orm_core.hpp"

#include <cmath>

#include "orm/error.hpp"
#include "orm/escp.hpp"
#include "orm/numerics.hpp"

namespace orm::core {
namespace {

// Value and omega-derivative of one ε0 contribution; `E_coeff` marks the B side.
struct Part {
    double value = 0.0;
    double deriv = 0.0;
    bool E_coeff = false;
};

std::vector<Part> epsilon0_parts(const PotentialSpec& spec, int l, double rho, double omega,
                                 std::size_t quad_order) {
    if (!(omega > 0.0) || !(rho > 0.0)) throw ValidationError("omega > 0 and rho > 0");
    const double d = effective_dimension(l, rho);
    const double lg_half_d = numerics::log_gamma(d / 2);
    std::vector<Part> parts;
    parts.push_back({d * omega / 4, d / 4, false});
    for (const auto& t : transform_potential(spec, l, rho)) {
        if (t.coeff == 0.0) continue;
        if (d / 2 + t.tau <= 0.0) throw ValidationError("d/2 + tau > 0");
        double m = 0.0, dm = 0.0;
        if (t.screen == 0.0) {
            m = vacuum_moment(t.tau, d, omega);
            dm = -t.tau / omega * m;
        } else if (std::isinf(t.screen)) {
            m = dm = 0.0;
        } else {
            const auto& q = numerics::cached_exp_sinh(quad_order);
            const double a = d / 2 + t.tau;
            const double s = t.screen * std::pow(omega, -t.rho);
            const double w = std::pow(omega, -t.tau) * std::exp(-lg_half_d);
            const double j0 = escp::screened_integral(a, t.rho, s, q);
            const double j1 = escp::screened_integral(a + t.rho, t.rho, s, q);
            m = w * j0;
            dm = w * (-t.tau * j0 + t.rho * s * j1) / omega;
        }
        // E-terms carry a negative coefficient; B collects -coeff so that ε0 = A - E B.
        if (t.carries_E)
            parts.push_back({-t.coeff * m, -t.coeff * dm, true});
        else
            parts.push_back({t.coeff * m, t.coeff * dm, false});
    }
    return parts;
}

}  // namespace

double effective_dimension(int l, double rho) { return 2.0 + 2.0 * rho * (2.0 * l + 1.0); }

double k_coefficient(int l, double rho, double D) {
    const double a = D - 2.0;
    const double b = 2.0 * rho * (2.0 * l + 1.0);
    return 0.25 * (a * a - b * b);
}

std::vector<TransformedTerm> transform_potential(const PotentialSpec& spec, int l, double rho) {
    (void)l;
    const double r2 = rho * rho;
    if (spec.kind == PotentialKind::CoulombPower) {
        return {{-4.0 * r2, 2.0 * rho - 1.0, true},
                {-4.0 * r2, rho - 1.0, false},
                {4.0 * spec.g * r2, 2.0 * rho + spec.nu * rho - 1.0, false}};
    }
    return {{-2.0 * r2, 2.0 * rho - 1.0, true},
            {-4.0 * r2, rho - 1.0, false},
            {2.0 * spec.B * r2, rho - 1.0, false, spec.c, rho}};
}

double vacuum_moment(double tau, double d, double omega) {
    return std::pow(omega, -tau) * numerics::gamma_ratio(d / 2 + tau, d / 2);
}

EpsilonSplit epsilon0_split(const PotentialSpec& spec, int l, double rho, double omega,
                            std::size_t quad_order) {
    EpsilonSplit s;
    for (const auto& p : epsilon0_parts(spec, l, rho, omega, quad_order)) {
        if (p.E_coeff) {
            s.B += p.value;
            s.dB += p.deriv;
        } else {
            s.A += p.value;
            s.dA += p.deriv;
        }
    }
    return s;
}

double epsilon0(const PotentialSpec& spec, int l, double rho, double omega, double E,
                std::size_t quad_order) {
    const EpsilonSplit s = epsilon0_split(spec, l, rho, omega, quad_order);
    return s.A - E * s.B;
}

std::array<double, 4> normal_order_power(int n, double d, double omega) {
    if (!(d > 0.0) || !(omega > 0.0)) throw ValidationError("d > 0 and omega > 0");
    switch (n) {
        case 1: return {d / (2 * omega), 1.0, 0.0, 0.0};
        case 2: return {d * (d + 2) / (4 * omega * omega), (d + 2) / omega, 1.0, 0.0};
        case 3:
            return {d * (d + 2) * (d + 4) / (8 * omega * omega * omega),
                    3 * (d + 2) * (d + 4) / (4 * omega * omega), 3 * (d + 4) / (2 * omega), 1.0};
        default: break;
    }
    throw ValidationError("normal_order_power supports n in {1, 2, 3}");
}

double orc_residual(const PotentialSpec& spec, int l, double rho, double omega, double E,
                    std::size_t quad_order) {
    const double h = 1e-4 * omega;
    const double fd = (epsilon0(spec, l, rho, omega + h, E, quad_order) -
                       epsilon0(spec, l, rho, omega - h, E, quad_order)) /
                      (2 * h);
    double scale = 0.0;
    for (const auto& p : epsilon0_parts(spec, l, rho, omega, quad_order))
        scale += std::abs(p.E_coeff ? E * p.deriv : p.deriv);
    return std::abs(fd) / scale;
}

}  // namespace orm::core
