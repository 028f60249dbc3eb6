#pragma once

// Special functions, half-line quadrature, bracketed root finding and 1-D
// minimization. Everything here is pure; Quadrature tables are immutable.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace orm::numerics {

/// ln Γ(x) for x > 0. Throws ValidationError otherwise.
double log_gamma(double x);

/// Γ(a)/Γ(b) evaluated in log space; exact products for small integer shifts.
double gamma_ratio(double a, double b);

/// 1/Γ(m) for integer m, with 1/Γ(m) = 0 at m ≤ 0.
double rgamma_int(int m);

/// Rising factorial (x)_k = x(x+1)...(x+k-1).
double pochhammer(double x, int k);

enum class QuadratureFamily {
    GaussLaguerre,  // ∫ u^α e^{-u} g(u) du, nodes from Golub–Welsch
    ExpSinh,        // ∫ f(u) du via u = exp(x - e^{-x}), trapezoid in x
};

/// Half-line rule. For GaussLaguerre the stored weights belong to u^α e^{-u};
/// for ExpSinh they integrate f directly. `log_nodes`/`log_weights` are kept so
/// integrands can be folded into a single exponential without under/overflow.
class Quadrature {
public:
    static Quadrature gauss_laguerre(std::size_t order, double alpha = 0.0);
    static Quadrature exp_sinh(std::size_t order);

    QuadratureFamily family() const noexcept { return family_; }
    double alpha() const noexcept { return alpha_; }
    std::size_t order() const noexcept { return nodes_.size(); }
    std::span<const double> nodes() const noexcept { return nodes_; }
    std::span<const double> weights() const noexcept { return weights_; }
    std::span<const double> log_nodes() const noexcept { return log_nodes_; }
    std::span<const double> log_weights() const noexcept { return log_weights_; }

    /// The rule with (about) twice as many nodes; nested for ExpSinh.
    Quadrature refined() const;

    /// Σ w_i g(u_i): the family's own weighted integral.
    double weighted_sum(const std::function<double(double)>& g) const;

private:
    Quadrature() = default;

    QuadratureFamily family_ = QuadratureFamily::ExpSinh;
    double alpha_ = 0.0;
    std::vector<double> nodes_;
    std::vector<double> weights_;
    std::vector<double> log_nodes_;
    std::vector<double> log_weights_;
};

/// Process-wide exp-sinh rules keyed by order; built once, never mutated.
const Quadrature& cached_exp_sinh(std::size_t order);

struct IntegralResult {
    double value = 0.0;
    double refined_rel_diff = 0.0;  // |I_n - I_2n| / |I_2n| when refinement ran
    bool accuracy_warning = false;
};

/// ∫₀^∞ f(u) du. With `refine` the rule is doubled and the two results compared;
/// a relative difference above `warn_tol` sets the accuracy warning. Non-finite
/// integrand values raise NumericalError.
IntegralResult integrate_halfline(const std::function<double(double)>& f, const Quadrature& q,
                                  bool refine, double warn_tol = 1e-10);

struct RootOptions {
    double tol = 1e-12;          // relative x tolerance
    std::size_t max_iter = 200;
};

/// Brent's bracketed root. Throws NumericalError::NoSignChange when g(lo), g(hi)
/// share a sign and MaxIterations if the bracket does not collapse.
double find_root(const std::function<double(double)>& g, double lo, double hi,
                 RootOptions opts = {});

struct MinimumResult {
    double x = 0.0;
    double f = 0.0;
    bool at_lower_edge = false;
    bool at_upper_edge = false;
    std::size_t evaluations = 0;
    bool pinned() const noexcept { return at_lower_edge || at_upper_edge; }
};

/// Brent golden-section/parabolic minimization on [lo, hi] to absolute x
/// tolerance `tol`. Edge flags are raised when the minimum lies within tol of a
/// bracket end (the end values are probed explicitly).
MinimumResult minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                              double tol = 1e-8, std::size_t max_iter = 500);

/// Coarse scan on `grid_points` equally spaced points followed by Brent on the
/// cell around the best point. Non-finite values count as +∞ during the scan.
MinimumResult minimize_global(const std::function<double(double)>& f, double lo, double hi,
                              double tol = 1e-8, std::size_t grid_points = 40);

}  // namespace orm::numerics
