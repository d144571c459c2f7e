#pragma once
// Runtime-dispatched vector kernels. Every entry point has a scalar
// reference implementation; wider variants (AVX2 on x86-64, NEON on
// aarch64) are selected once at startup and can be overridden for
// equivalence testing.

#include <cstddef>
#include <string_view>
#include <vector>

namespace tnw::simd {

struct Ops {
    const char* name;
    // sum_i a[i] * b[i]
    double (*dot)(const double* a, const double* b, std::size_t n);
    // y[i] += s * x[i]
    void (*axpy)(double s, const double* x, double* y, std::size_t n);
    // sum_i (a[i] - b[i])^2
    double (*squared_distance)(const double* a, const double* b, std::size_t n);
    // out = W x, W row-major rows x cols
    void (*matvec)(const double* w, std::size_t rows, std::size_t cols,
                   const double* x, double* out);
};

const Ops& scalar_ops();

// Variants compiled into this binary and usable on this CPU.
const std::vector<const Ops*>& available_ops();

// The active variant. Resolved once; stable for the process lifetime.
const Ops& active_ops();

// Force a variant by name ("scalar", "avx2", "neon"). Returns false if the
// variant is not available. Intended for tests and diagnostics.
bool select_ops(std::string_view name);

inline double dot(const double* a, const double* b, std::size_t n) {
    return active_ops().dot(a, b, n);
}
inline void axpy(double s, const double* x, double* y, std::size_t n) {
    active_ops().axpy(s, x, y, n);
}
inline double squared_distance(const double* a, const double* b, std::size_t n) {
    return active_ops().squared_distance(a, b, n);
}
inline void matvec(const double* w, std::size_t rows, std::size_t cols,
                   const double* x, double* out) {
    active_ops().matvec(w, rows, cols, x, out);
}

} // namespace tnw::simd
