// Compiled with -mavx2 -mfma; only reached after the runtime CPU check.

#include "orm/kernels.hpp"

#include <immintrin.h>

#include <cmath>
#include <cstddef>

namespace orm::kernels::avx2 {
namespace {

// exp(x) = 2^n · exp(r), r = x − n·ln2 with the fdlibm two-part ln2, and a
// degree-13 Taylor polynomial on |r| ≤ ln2/2 (truncation < 5e-18).
inline __m256d exp_pd(__m256d x) {
    const __m256d lo = _mm256_set1_pd(-708.0);
    const __m256d hi = _mm256_set1_pd(709.0);
    const __m256d under = _mm256_cmp_pd(x, lo, _CMP_LT_OQ);
    x = _mm256_min_pd(_mm256_max_pd(x, lo), hi);

    const __m256d n = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(1.4426950408889634)),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(n, _mm256_set1_pd(6.93147180369123816490e-01), x);
    r = _mm256_fnmadd_pd(n, _mm256_set1_pd(1.90821492927058770002e-10), r);

    __m256d p = _mm256_set1_pd(1.0 / 6227020800.0);
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 479001600.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 39916800.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 3628800.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 362880.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 40320.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 5040.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 720.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 120.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 24.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 6.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(0.5));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));

    __m256i e = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(n));
    e = _mm256_slli_epi64(_mm256_add_epi64(e, _mm256_set1_epi64x(1023)), 52);
    const __m256d res = _mm256_mul_pd(p, _mm256_castsi256_pd(e));
    return _mm256_andnot_pd(under, res);
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double scalar_exp(double x) { return x < -708.0 ? 0.0 : std::exp(x); }

}  // namespace

void exp_array(std::span<const double> x, std::span<double> out) {
    const std::size_t n = x.size();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(out.data() + i, exp_pd(_mm256_loadu_pd(x.data() + i)));
    for (; i < n; ++i) out[i] = scalar_exp(x[i]);
}

double exp_moment_sum(std::span<const double> log_u, std::span<const double> u,
                      std::span<const double> log_w, const ExpMomentParams& p) {
    const std::size_t n = log_u.size();
    const __m256d power = _mm256_set1_pd(p.power);
    const __m256d linear = _mm256_set1_pd(p.linear);
    const __m256d screen = _mm256_set1_pd(p.screen);
    const __m256d rho = _mm256_set1_pd(p.rho);
    const bool screened = p.screen != 0.0;

    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        for (int half = 0; half < 2; ++half) {
            const std::size_t k = i + 4 * half;
            const __m256d lu = _mm256_loadu_pd(log_u.data() + k);
            __m256d e = _mm256_fmadd_pd(power, lu, _mm256_loadu_pd(log_w.data() + k));
            e = _mm256_fnmadd_pd(linear, _mm256_loadu_pd(u.data() + k), e);
            if (screened) e = _mm256_fnmadd_pd(screen, exp_pd(_mm256_mul_pd(rho, lu)), e);
            if (half == 0)
                acc0 = _mm256_add_pd(acc0, exp_pd(e));
            else
                acc1 = _mm256_add_pd(acc1, exp_pd(e));
        }
    }
    double sum = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) {
        double e = log_w[i] + p.power * log_u[i] - p.linear * u[i];
        if (screened) e -= p.screen * std::exp(p.rho * log_u[i]);
        sum += scalar_exp(e);
    }
    return sum;
}

double dot(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i + 4), _mm256_loadu_pd(b.data() + i + 4),
                               acc1);
    }
    double sum = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) sum += a[i] * b[i];
    return sum;
}

}  // namespace orm::kernels::avx2
