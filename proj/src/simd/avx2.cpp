// AVX2+FMA kernels, 4 doubles per lane. Compiled with -mavx2 -mfma; only
// dispatched when cpuid reports both features.

#include "tnw/simd/ops.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace tnw::simd {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d swapped = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    double sum = hsum(acc);
    for (; i < n; ++i)
        sum += a[i] * b[i];
    return sum;
}

void axpy_avx2(double s, const double* x, double* y, std::size_t n) {
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_fmadd_pd(vs, _mm256_loadu_pd(x + i), vy);
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i)
        y[i] += s * x[i];
}

double sqdist_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    double sum = hsum(acc);
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

void matvec_avx2(const double* w, std::size_t rows, std::size_t cols,
                 const double* x, double* out) {
    // Two rows per pass keeps x loads shared.
    std::size_t r = 0;
    for (; r + 2 <= rows; r += 2) {
        const double* w0 = w + r * cols;
        const double* w1 = w0 + cols;
        __m256d acc0 = _mm256_setzero_pd();
        __m256d acc1 = _mm256_setzero_pd();
        std::size_t i = 0;
        for (; i + 4 <= cols; i += 4) {
            const __m256d vx = _mm256_loadu_pd(x + i);
            acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(w0 + i), vx, acc0);
            acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(w1 + i), vx, acc1);
        }
        double s0 = hsum(acc0);
        double s1 = hsum(acc1);
        for (; i < cols; ++i) {
            s0 += w0[i] * x[i];
            s1 += w1[i] * x[i];
        }
        out[r] = s0;
        out[r + 1] = s1;
    }
    if (r < rows)
        out[r] = dot_avx2(w + r * cols, x, cols);
}

} // namespace

const Ops* avx2_ops() {
    static const Ops ops{"avx2", dot_avx2, axpy_avx2, sqdist_avx2, matvec_avx2};
    return &ops;
}

} // namespace tnw::simd

#else

namespace tnw::simd {
const Ops* avx2_ops() { return nullptr; }
} // namespace tnw::simd

#endif
