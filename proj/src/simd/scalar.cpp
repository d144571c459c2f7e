// Scalar reference kernels. These define the semantics the SIMD variants
// are tested against.

#include "tnw/simd/ops.hpp"

namespace tnw::simd {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += a[i] * b[i];
    return acc;
}

void axpy_scalar(double s, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        y[i] += s * x[i];
}

double sqdist_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

void matvec_scalar(const double* w, std::size_t rows, std::size_t cols,
                   const double* x, double* out) {
    for (std::size_t r = 0; r < rows; ++r)
        out[r] = dot_scalar(w + r * cols, x, cols);
}

} // namespace

const Ops& scalar_ops() {
    static const Ops ops{"scalar", dot_scalar, axpy_scalar, sqdist_scalar, matvec_scalar};
    return ops;
}

} // namespace tnw::simd
