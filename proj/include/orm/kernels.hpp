#pragma once

// Data-parallel inner loops behind the half-line quadrature. Each kernel has a
// scalar reference implementation and (on x86-64) an AVX2+FMA variant; the
// dispatcher picks one at runtime. Set ORM_KERNELS=scalar to force the
// reference path.

#include <optional>
#include <span>
#include <string_view>

namespace orm::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa) noexcept;

/// Whether the variant was compiled in and the CPU supports it.
bool isa_available(Isa isa) noexcept;

/// The variant used by the dispatching entry points below.
Isa active_isa() noexcept;

/// Test hook: pin the dispatch to `isa` (ignored if unavailable); nullopt restores
/// automatic selection.
void force_isa(std::optional<Isa> isa) noexcept;

/// Parameters of the exponent  log_w + power·ln u − linear·u − screen·exp(rho·ln u).
struct ExpMomentParams {
    double power = 0.0;
    double linear = 1.0;
    double screen = 0.0;
    double rho = 1.0;
};

/// Σ_i exp(log_w[i] + power·log_u[i] − linear·u[i] − screen·exp(rho·log_u[i])).
double exp_moment_sum(std::span<const double> log_u, std::span<const double> u,
                      std::span<const double> log_w, const ExpMomentParams& p);

/// Σ_i a[i]·b[i].
double dot(std::span<const double> a, std::span<const double> b);

namespace scalar {
double exp_moment_sum(std::span<const double> log_u, std::span<const double> u,
                      std::span<const double> log_w, const ExpMomentParams& p);
double dot(std::span<const double> a, std::span<const double> b);
}  // namespace scalar

#if defined(ORM_HAVE_AVX2)
namespace avx2 {
double exp_moment_sum(std::span<const double> log_u, std::span<const double> u,
                      std::span<const double> log_w, const ExpMomentParams& p);
double dot(std::span<const double> a, std::span<const double> b);
/// Vector exp used by exp_moment_sum, exposed for accuracy tests. Writes
/// exp(x[i]) to out[i]; inputs below -708 flush to 0.
void exp_array(std::span<const double> x, std::span<double> out);
}  // namespace avx2
#endif

}  // namespace orm::kernels
