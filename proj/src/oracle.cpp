#include "orm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "orm/error.hpp"
#include "orm/numerics.hpp"

namespace orm::oracle {
namespace {

struct Tabulated {
    std::vector<double> r;
    std::vector<double> veff;  // V + l(l+1)/2r^2
    std::vector<double> base;  // 2 r^2 V + (l+1/2)^2
    std::vector<double> r2;    // 2 r^2
};

Tabulated tabulate(const std::function<double(double)>& V, int l, const RadialGrid& g) {
    Tabulated t;
    const std::size_t n = g.nodes();
    t.r.resize(n);
    t.veff.resize(n);
    t.base.resize(n);
    t.r2.resize(n);
    const double x0 = std::log(g.r_min);
    const double lh = (l + 0.5) * (l + 0.5);
    for (std::size_t i = 0; i < n; ++i) {
        const double r = std::exp(x0 + g.h * static_cast<double>(i));
        const double v = V(r);
        t.r[i] = r;
        t.veff[i] = v + l * (l + 1.0) / (2 * r * r);
        t.r2[i] = 2 * r * r;
        t.base[i] = t.r2[i] * v + lh;
    }
    return t;
}

// Sign changes of the outward solution y (u = r^{1/2} y) at energy E.
int count_nodes(const Tabulated& t, int l, double z_eff, double h, double E) {
    const std::size_t n = t.r.size();
    const double h12 = h * h / 12.0;
    auto start = [&](double r) { return std::pow(r, l + 0.5) * (1.0 - z_eff * r / (l + 1.0)); };
    double y_prev = start(t.r[0]);
    double y = start(t.r[1]);
    double f_prev = 1.0 - h12 * (t.base[0] - t.r2[0] * E);
    double f = 1.0 - h12 * (t.base[1] - t.r2[1] * E);
    int nodes = 0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double f_next = 1.0 - h12 * (t.base[i + 1] - t.r2[i + 1] * E);
        // Past this point the step is unstable; it only happens deep in a
        // forbidden region, where the solution has no further nodes.
        if (f_next <= 0.0) break;
        const double y_next = ((12.0 - 10.0 * f) * y - f_prev * y_prev) / f_next;
        if ((y_next < 0.0) != (y < 0.0) && y != 0.0) ++nodes;
        y_prev = y;
        y = y_next;
        f_prev = f;
        f = f_next;
        if (std::abs(y) > 1e150) {
            y *= 1e-150;
            y_prev *= 1e-150;
        }
    }
    return nodes;
}

double wkb_r_max(const std::function<double(double)>& V, int l, double E, const OracleOptions& o) {
    auto veff = [&](double r) { return V(r) + l * (l + 1.0) / (2 * r * r); };
    // Outer turning point: walk outward geometrically from the classically allowed region.
    double r = 1e-3;
    double last_allowed = -1.0;
    for (; r < o.r_max_cap; r *= 1.01)
        if (veff(r) < E) last_allowed = r;
    if (last_allowed < 0.0) return o.grid.r_max;
    double integral = 0.0;
    r = last_allowed;
    while (integral < o.decay_target && r < o.r_max_cap) {
        const double dr = 0.01 * r;
        const double gap = veff(r + 0.5 * dr) - E;
        if (gap > 0.0) integral += std::sqrt(2 * gap) * dr;
        r += dr;
    }
    return std::clamp(r, 40.0, o.r_max_cap);
}

}  // namespace

std::size_t RadialGrid::nodes() const {
    return static_cast<std::size_t>(std::ceil(std::log(r_max / r_min) / h)) + 1;
}

double numerov_fixed(const std::function<double(double)>& V, int l, int k, const RadialGrid& grid) {
    if (l < 0 || k < 0) throw ValidationError("l ≥ 0 and k ≥ 0");
    if (!(grid.r_min > 0.0) || !(grid.r_max > grid.r_min) || !(grid.h > 0.0))
        throw ValidationError("0 < r_min < r_max and h > 0");
    const Tabulated t = tabulate(V, l, grid);
    const double z_eff = -grid.r_min * V(grid.r_min);

    double lo = -1.0;
    double hi = 1.0;
    for (int i = 0; count_nodes(t, l, z_eff, grid.h, hi) <= k; ++i) {
        if (i > 200) throw NumericalError(NumericalError::Kind::NoBoundState, "no upper energy bracket");
        hi = hi * 2 + 1;
    }
    for (int i = 0; count_nodes(t, l, z_eff, grid.h, lo) > k; ++i) {
        if (i > 60) throw NumericalError(NumericalError::Kind::NoBoundState, "no lower energy bracket");
        lo = lo * 2 - 1;
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (count_nodes(t, l, z_eff, grid.h, mid) > k)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

OracleResult numerov_eigenvalue(const std::function<double(double)>& V, int l, int k,
                                Convention convention, const OracleOptions& opts) {
    OracleResult res;
    res.grid = opts.grid;
    double E = numerov_fixed(V, l, k, res.grid);
    if (opts.adaptive) {
        for (int pass = 0; pass < 6; ++pass) {
            const double need = wkb_r_max(V, l, E, opts);
            if (need <= res.grid.r_max * 1.0001) break;
            res.grid.r_max = need;
            E = numerov_fixed(V, l, k, res.grid);
        }
        bool converged = false;
        for (int pass = 0; pass < 8; ++pass) {
            RadialGrid finer = res.grid;
            finer.h /= 2;
            const double E2 = numerov_fixed(V, l, k, finer);
            res.h_change = std::abs(E2 - E);
            res.grid = finer;
            E = E2;
            if (res.h_change < opts.h_tol * std::max(1.0, std::abs(E))) {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw NumericalError(NumericalError::Kind::MaxIterations, "radial grid did not converge");
    }
    if (!(E < V(res.grid.r_max)))
        throw NumericalError(NumericalError::Kind::NoBoundState, "level is not below the box threshold");
    res.energy = convention == Convention::EscpHalf ? 2 * E : E;
    return res;
}

std::function<double(double)> potential_function(const PotentialSpec& spec) {
    if (spec.kind == PotentialKind::CoulombPower) {
        const double g = spec.g, nu = spec.nu;
        return [g, nu](double r) { return -1.0 / r + g * std::pow(r, nu); };
    }
    const double B = spec.B, c = spec.c;
    return [B, c](double r) { return (-1.0 + 0.5 * B * std::exp(-c * r)) / r; };
}

OracleResult reference_energy(const PotentialSpec& spec, const QuantumState& state,
                              const OracleOptions& opts) {
    validate(spec, state, {});
    const auto conv = spec.kind == PotentialKind::Escp ? Convention::EscpHalf : Convention::Standard;
    return numerov_eigenvalue(potential_function(spec), state.l, state.n_r, conv, opts);
}

double basis_polynomial(int n, double d, double t) {
    const double alpha = d / 2 - 1;
    double prev = 1.0, cur = 1.0;
    if (n > 0) cur = 1.0 + alpha - t;
    for (int k = 1; k < n; ++k) {
        const double next = ((2 * k + 1 + alpha - t) * cur - (k + alpha) * prev) / (k + 1);
        prev = cur;
        cur = next;
    }
    const double norm = std::exp(0.5 * (numerics::log_gamma(n + 1.0) - numerics::log_gamma(n + d / 2)));
    return (n == 0 ? 1.0 : cur) * norm;
}

double basis_matrix_element(const std::function<double(double)>& f, const OscillatorBasisState& m,
                            const OscillatorBasisState& n) {
    if (m.d != n.d || m.omega != n.omega) throw ValidationError("states share d and omega");
    if (!(n.d > 0.0) || !(n.omega > 0.0)) throw ValidationError("d > 0 and omega > 0");
    const double alpha = n.d / 2 - 1;
    auto integrand = [&](double t) {
        return std::exp(alpha * std::log(t) - t) * basis_polynomial(m.n, m.d, t) *
               basis_polynomial(n.n, n.d, t) * f(std::sqrt(t / n.omega));
    };
    std::size_t order = 401;
    auto q = numerics::Quadrature::exp_sinh(order);
    double prev = numerics::integrate_halfline(integrand, q, false).value;
    for (int pass = 0; pass < 3; ++pass) {
        q = q.refined();
        const double cur = numerics::integrate_halfline(integrand, q, false).value;
        const double scale = std::max(std::abs(cur), 1e-300);
        if (std::abs(cur - prev) <= 1e-13 * scale) return cur;
        prev = cur;
    }
    return prev;
}

double basis_expectation(const std::function<double(double)>& f, const OscillatorBasisState& state) {
    return basis_matrix_element(f, state, state);
}

}  // namespace orm::oracle
