#include "orm/kernels.hpp"

#include <cmath>
#include <cstddef>

namespace orm::kernels::scalar {

double exp_moment_sum(std::span<const double> log_u, std::span<const double> u,
                      std::span<const double> log_w, const ExpMomentParams& p) {
    double sum = 0.0;
    const std::size_t n = log_u.size();
    for (std::size_t i = 0; i < n; ++i) {
        double e = log_w[i] + p.power * log_u[i] - p.linear * u[i];
        if (p.screen != 0.0) e -= p.screen * std::exp(p.rho * log_u[i]);
        sum += std::exp(e);
    }
    return sum;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
    return sum;
}

}  // namespace orm::kernels::scalar
