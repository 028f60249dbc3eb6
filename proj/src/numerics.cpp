#include "orm/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "orm/error.hpp"
#include "orm/kernels.hpp"

namespace orm::numerics {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Half-width of the exp-sinh x-interval. At x = -6.5 the node is e^{-671.6},
// at x = +6.5 it is e^{6.5} ≈ 665, beyond which e^{-u} is below double range.
constexpr double kExpSinhHalfWidth = 6.5;

bool is_small_integer(double d, int& k) {
    const double r = std::round(d);
    if (std::abs(d - r) > 0.0 || std::abs(r) > 64.0) return false;
    k = static_cast<int>(r);
    return true;
}

// Eigenvalues of the symmetric tridiagonal matrix (diag, off) by implicit QL
// with Wilkinson shifts; off[i] couples i and i+1.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag, std::vector<double> off) {
    const std::size_t n = diag.size();
    off.resize(n, 0.0);
    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(diag[m]) + std::abs(diag[m + 1]);
                if (std::abs(off[m]) <= kEps * dd) break;
            }
            if (m != l) {
                if (++iter > 60) throw NumericalError(NumericalError::Kind::MaxIterations,
                                                      "tridiagonal QL did not converge");
                double g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
                double r = std::hypot(g, 1.0);
                g = diag[m] - diag[l] + off[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                std::size_t i = m;
                bool underflow = false;
                while (i-- > l) {
                    double f = s * off[i];
                    const double b = c * off[i];
                    r = std::hypot(f, g);
                    off[i + 1] = r;
                    if (r == 0.0) {
                        diag[i + 1] -= p;
                        off[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = diag[i + 1] - p;
                    r = (diag[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    diag[i + 1] = g + p;
                    g = c * r - b;
                }
                if (underflow) continue;
                diag[l] -= p;
                off[l] = g;
                off[m] = 0.0;
            }
        } while (m != l);
    }
    std::sort(diag.begin(), diag.end());
    return diag;
}

// Orthonormal Laguerre recurrence at x, carried with a running log scale so that
// the large-node values do not overflow. Returns log Σ_{k<n} P_k² and P_n, P_n'
// in the same (scaled) units.
struct LaguerreEval {
    double log_sum_sq = 0.0;
    double pn = 0.0;
    double dpn = 0.0;
};

LaguerreEval laguerre_orthonormal(std::size_t n, double alpha, double x) {
    double p_prev = 0.0, p = 1.0;   // P_{-1}, P_0 (P_0 normalized to 1, μ0 restored by caller)
    double d_prev = 0.0, d = 0.0;
    double sum_sq = 0.0;
    double log_scale = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        sum_sq += p * p;
        const double a = 2.0 * static_cast<double>(k) + alpha + 1.0;
        const double sb = std::sqrt(static_cast<double>(k) * (static_cast<double>(k) + alpha));
        const double sb1 =
            std::sqrt(static_cast<double>(k + 1) * (static_cast<double>(k + 1) + alpha));
        const double p_next = ((x - a) * p - sb * p_prev) / sb1;
        const double d_next = (p + (x - a) * d - sb * d_prev) / sb1;
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
        const double mag = std::max(std::abs(p), std::abs(d));
        if (mag > 1e100) {
            constexpr double f = 1e-100;
            p *= f; p_prev *= f; d *= f; d_prev *= f;
            sum_sq *= f * f;
            log_scale += 100.0 * std::log(10.0);
        }
    }
    return {std::log(sum_sq) + 2.0 * log_scale, p, d};
}

}  // namespace

double log_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw ValidationError("log_gamma requires x > 0");
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgamma_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

double gamma_ratio(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw ValidationError("gamma_ratio requires a > 0 and b > 0");
    int k = 0;
    if (is_small_integer(a - b, k)) {
        double prod = 1.0;
        if (k >= 0) {
            for (int j = 0; j < k; ++j) prod *= b + j;
            return prod;
        }
        for (int j = 0; j < -k; ++j) prod *= a + j;
        return 1.0 / prod;
    }
    return std::exp(log_gamma(a) - log_gamma(b));
}

double rgamma_int(int m) {
    if (m <= 0) return 0.0;
    return std::exp(-log_gamma(static_cast<double>(m)));
}

double pochhammer(double x, int k) {
    double prod = 1.0;
    for (int j = 0; j < k; ++j) prod *= x + j;
    return prod;
}

Quadrature Quadrature::gauss_laguerre(std::size_t order, double alpha) {
    if (order == 0) throw ValidationError("quadrature order > 0");
    if (!(alpha > -1.0)) throw ValidationError("Gauss-Laguerre requires alpha > -1");

    std::vector<double> diag(order), off(order > 1 ? order - 1 : 0);
    for (std::size_t k = 0; k < order; ++k) diag[k] = 2.0 * static_cast<double>(k) + alpha + 1.0;
    for (std::size_t k = 1; k < order; ++k)
        off[k - 1] = std::sqrt(static_cast<double>(k) * (static_cast<double>(k) + alpha));
    std::vector<double> x = tridiagonal_eigenvalues(std::move(diag), std::move(off));

    const double log_mu0 = log_gamma(alpha + 1.0);
    Quadrature q;
    q.family_ = QuadratureFamily::GaussLaguerre;
    q.alpha_ = alpha;
    q.nodes_.resize(order);
    q.weights_.resize(order);
    q.log_nodes_.resize(order);
    q.log_weights_.resize(order);
    for (std::size_t i = 0; i < order; ++i) {
        double xi = x[i];
        for (int it = 0; it < 3; ++it) {
            const LaguerreEval ev = laguerre_orthonormal(order, alpha, xi);
            if (ev.dpn == 0.0) break;
            const double step = ev.pn / ev.dpn;
            xi -= step;
            if (std::abs(step) <= 4.0 * kEps * xi) break;
        }
        const LaguerreEval ev = laguerre_orthonormal(order, alpha, xi);
        q.nodes_[i] = xi;
        q.log_nodes_[i] = std::log(xi);
        q.log_weights_[i] = log_mu0 - ev.log_sum_sq;
        q.weights_[i] = std::exp(q.log_weights_[i]);
    }
    return q;
}

Quadrature Quadrature::exp_sinh(std::size_t order) {
    if (order < 3) throw ValidationError("exp-sinh order >= 3");
    const double h = 2.0 * kExpSinhHalfWidth / static_cast<double>(order - 1);
    Quadrature q;
    q.family_ = QuadratureFamily::ExpSinh;
    q.nodes_.resize(order);
    q.weights_.resize(order);
    q.log_nodes_.resize(order);
    q.log_weights_.resize(order);
    const double log_h = std::log(h);
    for (std::size_t k = 0; k < order; ++k) {
        const double x = -kExpSinhHalfWidth + h * static_cast<double>(k);
        const double emx = std::exp(-x);
        const double lu = x - emx;
        q.log_nodes_[k] = lu;
        q.nodes_[k] = std::exp(lu);
        q.log_weights_[k] = log_h + lu + std::log1p(emx);
        q.weights_[k] = std::exp(q.log_weights_[k]);
    }
    return q;
}

Quadrature Quadrature::refined() const {
    if (family_ == QuadratureFamily::GaussLaguerre) return gauss_laguerre(2 * order(), alpha_);
    return exp_sinh(2 * order() - 1);
}

double Quadrature::weighted_sum(const std::function<double(double)>& g) const {
    std::vector<double> values(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) values[i] = g(nodes_[i]);
    return kernels::dot(weights_, values);
}

const Quadrature& cached_exp_sinh(std::size_t order) {
    static std::mutex mu;
    static std::map<std::size_t, std::unique_ptr<Quadrature>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[order];
    if (!slot) slot = std::make_unique<Quadrature>(Quadrature::exp_sinh(order));
    return *slot;
}

namespace {

double halfline_sum(const std::function<double(double)>& f, const Quadrature& q) {
    const auto nodes = q.nodes();
    const auto log_w = q.log_weights();
    std::vector<double> w(nodes.size()), values(nodes.size());
    const bool laguerre = q.family() == QuadratureFamily::GaussLaguerre;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double v = f(nodes[i]);
        if (!std::isfinite(v))
            throw NumericalError(NumericalError::Kind::NonFinite,
                                 "integrand not finite at u = " + std::to_string(nodes[i]));
        values[i] = v;
        w[i] = laguerre ? std::exp(log_w[i] + nodes[i] - q.alpha() * q.log_nodes()[i])
                        : q.weights()[i];
    }
    return kernels::dot(w, values);
}

}  // namespace

IntegralResult integrate_halfline(const std::function<double(double)>& f, const Quadrature& q,
                                  bool refine, double warn_tol) {
    IntegralResult out;
    out.value = halfline_sum(f, q);
    if (refine) {
        const double fine = halfline_sum(f, q.refined());
        const double scale = std::max(std::abs(fine), std::numeric_limits<double>::min());
        out.refined_rel_diff = std::abs(out.value - fine) / scale;
        out.accuracy_warning = out.refined_rel_diff > warn_tol;
        out.value = fine;
    }
    return out;
}

double find_root(const std::function<double(double)>& g, double lo, double hi, RootOptions opts) {
    double a = lo, b = hi;
    double fa = g(a), fb = g(b);
    if (!std::isfinite(fa) || !std::isfinite(fb))
        throw NumericalError(NumericalError::Kind::NonFinite, "root bracket end not finite");
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw NumericalError(NumericalError::Kind::NoSignChange, "no sign change on bracket");

    double c = a, fc = fa, d = b - a, e = d;
    for (std::size_t iter = 0; iter < opts.max_iter; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * kEps * std::abs(b) + 0.5 * opts.tol * std::abs(b);
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc, r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol1 ? d : std::copysign(tol1, xm);
        fb = g(b);
        if (!std::isfinite(fb))
            throw NumericalError(NumericalError::Kind::NonFinite, "root function not finite");
    }
    throw NumericalError(NumericalError::Kind::MaxIterations, "root finder exceeded iterations");
}

MinimumResult minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                              double tol, std::size_t max_iter) {
    if (!(hi > lo)) throw ValidationError("minimize_scalar requires lo < hi");
    constexpr double cgold = 0.3819660112501051;
    const double sqrt_eps = std::sqrt(kEps);

    MinimumResult res;
    auto eval = [&](double x) {
        ++res.evaluations;
        const double v = f(x);
        if (std::isnan(v) || v == -std::numeric_limits<double>::infinity())
            throw NumericalError(NumericalError::Kind::NonFinite,
                                 "objective not finite at " + std::to_string(x));
        return v;
    };

    double a = lo, b = hi;
    double x = a + cgold * (b - a), w = x, v = x;
    double fx = eval(x), fw = fx, fv = fx;
    double d = 0.0, e = 0.0;
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        const double xm = 0.5 * (a + b);
        const double tol1 = sqrt_eps * std::abs(x) + tol / 3.0;
        const double tol2 = 2.0 * tol1;
        if (std::abs(x - xm) <= tol2 - 0.5 * (b - a)) break;
        bool golden = true;
        if (std::abs(e) > tol1) {
            double r = (x - w) * (fx - fv);
            double q = (x - v) * (fx - fw);
            double p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if (q > 0.0) p = -p;
            q = std::abs(q);
            const double etemp = e;
            e = d;
            if (std::abs(p) < std::abs(0.5 * q * etemp) && p > q * (a - x) && p < q * (b - x)) {
                d = p / q;
                const double u = x + d;
                if (u - a < tol2 || b - u < tol2) d = std::copysign(tol1, xm - x);
                golden = false;
            }
        }
        if (golden) {
            e = (x >= xm) ? a - x : b - x;
            d = cgold * e;
        }
        const double u = std::abs(d) >= tol1 ? x + d : x + std::copysign(tol1, d);
        const double fu = eval(u);
        if (fu <= fx) {
            if (u >= x) a = x; else b = x;
            v = w; fv = fw;
            w = x; fw = fx;
            x = u; fx = fu;
        } else {
            if (u < x) a = u; else b = u;
            if (fu <= fw || w == x) {
                v = w; fv = fw;
                w = u; fw = fu;
            } else if (fu <= fv || v == x || v == w) {
                v = u; fv = fu;
            }
        }
    }

    res.x = x;
    res.f = fx;
    const double f_lo = eval(lo);
    const double f_hi = eval(hi);
    if (f_lo <= res.f) {
        res.x = lo;
        res.f = f_lo;
    }
    if (f_hi < res.f) {
        res.x = hi;
        res.f = f_hi;
    }
    const double edge_tol = tol + 2.0 * sqrt_eps * std::abs(res.x);
    res.at_lower_edge = res.x - lo <= edge_tol;
    res.at_upper_edge = hi - res.x <= edge_tol;
    return res;
}

MinimumResult minimize_global(const std::function<double(double)>& f, double lo, double hi,
                              double tol, std::size_t grid_points) {
    if (!(hi > lo)) throw ValidationError("minimize_global requires lo < hi");
    grid_points = std::max<std::size_t>(grid_points, 3);
    constexpr double big = std::numeric_limits<double>::max();
    auto safe = [&](double x) {
        const double v = f(x);
        return std::isfinite(v) ? v : big;
    };

    std::vector<double> xs(grid_points), fs(grid_points);
    std::size_t best = 0;
    for (std::size_t i = 0; i < grid_points; ++i) {
        xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(grid_points - 1);
        fs[i] = safe(xs[i]);
        if (fs[i] < fs[best]) best = i;
    }
    if (fs[best] == big)
        throw NumericalError(NumericalError::Kind::NonFinite, "objective not finite on bracket");

    const std::size_t i0 = best == 0 ? 0 : best - 1;
    const std::size_t i1 = std::min(best + 1, grid_points - 1);
    MinimumResult res = minimize_scalar(safe, xs[i0], xs[i1], tol);
    res.evaluations += grid_points;
    if (fs[best] < res.f) {
        res.x = xs[best];
        res.f = fs[best];
    }
    const double edge_tol = tol + 2.0 * std::sqrt(kEps) * std::abs(res.x);
    res.at_lower_edge = res.x - lo <= edge_tol;
    res.at_upper_edge = hi - res.x <= edge_tol;
    return res;
}

}  // namespace orm::numerics
