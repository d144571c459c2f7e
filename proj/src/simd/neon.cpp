// NEON kernels for aarch64, 2 doubles per lane. Mirrors the scalar
// reference; compiled out entirely on other targets.

#include "tnw/simd/ops.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

namespace tnw::simd {
namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        acc = vfmaq_f64(acc, vld1q_f64(a + i), vld1q_f64(b + i));
    double sum = vaddvq_f64(acc);
    for (; i < n; ++i)
        sum += a[i] * b[i];
    return sum;
}

void axpy_neon(double s, const double* x, double* y, std::size_t n) {
    const float64x2_t vs = vdupq_n_f64(s);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t vy = vld1q_f64(y + i);
        vy = vfmaq_f64(vy, vs, vld1q_f64(x + i));
        vst1q_f64(y + i, vy);
    }
    for (; i < n; ++i)
        y[i] += s * x[i];
}

double sqdist_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t d = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
        acc = vfmaq_f64(acc, d, d);
    }
    double sum = vaddvq_f64(acc);
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

void matvec_neon(const double* w, std::size_t rows, std::size_t cols,
                 const double* x, double* out) {
    for (std::size_t r = 0; r < rows; ++r)
        out[r] = dot_neon(w + r * cols, x, cols);
}

} // namespace

const Ops* neon_ops() {
    static const Ops ops{"neon", dot_neon, axpy_neon, sqdist_neon, matvec_neon};
    return &ops;
}

} // namespace tnw::simd

#else

namespace tnw::simd {
const Ops* neon_ops() { return nullptr; }
} // namespace tnw::simd

#endif
