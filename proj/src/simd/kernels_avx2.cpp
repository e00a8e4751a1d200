// Compiled with -mavx2 only. Nothing here may be called unless the CPU reports AVX2.
#include "mimetic/simd.hpp"

#include <immintrin.h>

namespace mimetic::simd::detail {
namespace {

constexpr std::size_t kLanes = 4;

void diff_avx2(double* out, const double* hi, const double* lo, std::size_t n, double scale)
{
    const __m256d s = _mm256_set1_pd(scale);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(hi + i), _mm256_loadu_pd(lo + i));
        _mm256_storeu_pd(out + i, _mm256_mul_pd(d, s));
    }
    for (; i < n; ++i) out[i] = (hi[i] - lo[i]) * scale;
}

void diff_add_avx2(double* out, const double* hi, const double* lo, std::size_t n, double scale)
{
    const __m256d s = _mm256_set1_pd(scale);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(hi + i), _mm256_loadu_pd(lo + i));
        __m256d o = _mm256_add_pd(_mm256_loadu_pd(out + i), _mm256_mul_pd(d, s));
        _mm256_storeu_pd(out + i, o);
    }
    for (; i < n; ++i) out[i] = out[i] + (hi[i] - lo[i]) * scale;
}

void axpy_avx2(double* y, const double* x, std::size_t n, double a)
{
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        __m256d r = _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
        _mm256_storeu_pd(y + i, r);
    }
    for (; i < n; ++i) y[i] = y[i] + a * x[i];
}

void waxpy_avx2(double* y, const double* w, const double* x, std::size_t n, double a)
{
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes) {
        __m256d aw = _mm256_mul_pd(va, _mm256_loadu_pd(w + i));
        __m256d r = _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_mul_pd(aw, _mm256_loadu_pd(x + i)));
        _mm256_storeu_pd(y + i, r);
    }
    for (; i < n; ++i) y[i] = y[i] + (a * w[i]) * x[i];
}

void mul_avx2(double* out, const double* w, const double* x, std::size_t n)
{
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes)
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) out[i] = w[i] * x[i];
}

void div_avx2(double* out, const double* x, const double* w, std::size_t n)
{
    std::size_t i = 0;
    for (; i + kLanes <= n; i += kLanes)
        _mm256_storeu_pd(out + i, _mm256_div_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(w + i)));
    for (; i < n; ++i) out[i] = x[i] / w[i];
}

}  // namespace

const KernelTable avx2_table = {
    diff_avx2, diff_add_avx2, axpy_avx2, waxpy_avx2, mul_avx2, div_avx2, Backend::avx2,
};

}  // namespace mimetic::simd::detail
