// Runtime selection between the kernel variants. No intrinsics here.

#include "orm/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace orm::kernels {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(ORM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa detect() noexcept {
    if (const char* env = std::getenv("ORM_KERNELS"); env && std::strcmp(env, "scalar") == 0)
        return Isa::Scalar;
    return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

// -1: automatic, otherwise the forced Isa value.
std::atomic<int> g_forced{-1};

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::Avx2: return "avx2";
        case Isa::Scalar: break;
    }
    return "scalar";
}

bool isa_available(Isa isa) noexcept {
    static const bool avx2 = cpu_has_avx2();
    return isa == Isa::Scalar || (isa == Isa::Avx2 && avx2);
}

Isa active_isa() noexcept {
    const int forced = g_forced.load(std::memory_order_relaxed);
    if (forced >= 0) return static_cast<Isa>(forced);
    static const Isa detected = detect();
    return detected;
}

void force_isa(std::optional<Isa> isa) noexcept {
    if (!isa) {
        g_forced.store(-1, std::memory_order_relaxed);
    } else if (isa_available(*isa)) {
        g_forced.store(static_cast<int>(*isa), std::memory_order_relaxed);
    }
}

double exp_moment_sum(std::span<const double> log_u, std::span<const double> u,
                      std::span<const double> log_w, const ExpMomentParams& p) {
#if defined(ORM_HAVE_AVX2)
    if (active_isa() == Isa::Avx2) return avx2::exp_moment_sum(log_u, u, log_w, p);
#endif
    return scalar::exp_moment_sum(log_u, u, log_w, p);
}

double dot(std::span<const double> a, std::span<const double> b) {
#if defined(ORM_HAVE_AVX2)
    if (active_isa() == Isa::Avx2) return avx2::dot(a, b);
#endif
    return scalar::dot(a, b);
}

}  // namespace orm::kernels
