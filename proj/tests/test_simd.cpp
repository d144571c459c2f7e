#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tnw/rng.hpp"
#include "tnw/simd/ops.hpp"

#include <cmath>
#include <vector>

using namespace tnw;

namespace {

std::vector<double> random_vec(RngStream& rng, std::size_t n, double lo = -3.0,
                               double hi = 3.0) {
    std::vector<double> v(n);
    for (double& x : v)
        x = rng.uniform(lo, hi);
    return v;
}

// tolerance for reassociated accumulation
bool close(double a, double b, double scale) {
    return std::abs(a - b) <= 1e-12 * std::max({1.0, scale, std::abs(a), std::abs(b)});
}

} // namespace

TEST_CASE("registry always contains the scalar reference") {
    const auto& ops = simd::available_ops();
    REQUIRE(!ops.empty());
    CHECK(std::string(ops.front()->name) == "scalar");
    bool active_known = false;
    for (const auto* o : ops)
        if (o == &simd::active_ops())
            active_known = true;
    CHECK(active_known);
}

TEST_CASE("select_ops switches variants and rejects unknown names") {
    CHECK(simd::select_ops("scalar"));
    CHECK(std::string(simd::active_ops().name) == "scalar");
    CHECK(!simd::select_ops("not-a-variant"));
    // restore the widest variant for the remaining tests
    CHECK(simd::select_ops(simd::available_ops().back()->name));
}

TEST_CASE("variants agree with the scalar reference") {
    RngStream rng(42);
    const auto& scalar = simd::scalar_ops();
    for (const auto* variant : simd::available_ops()) {
        CAPTURE(variant->name);
        for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 16u, 17u, 63u, 64u, 100u, 257u}) {
            const auto a = random_vec(rng, n);
            const auto b = random_vec(rng, n);
            const double mag = static_cast<double>(n) * 9.0;

            CHECK(close(variant->dot(a.data(), b.data(), n),
                        scalar.dot(a.data(), b.data(), n), mag));
            CHECK(close(variant->squared_distance(a.data(), b.data(), n),
                        scalar.squared_distance(a.data(), b.data(), n), mag));

            auto y1 = random_vec(rng, n);
            auto y2 = y1;
            variant->axpy(1.7, a.data(), y1.data(), n);
            scalar.axpy(1.7, a.data(), y2.data(), n);
            for (std::size_t i = 0; i < n; ++i)
                CHECK(close(y1[i], y2[i], 10.0));
        }
    }
}

TEST_CASE("matvec matches row-by-row dot products") {
    RngStream rng(7);
    for (const auto* variant : simd::available_ops()) {
        CAPTURE(variant->name);
        for (auto [rows, cols] : {std::pair<std::size_t, std::size_t>{1, 1},
                                  {3, 5},
                                  {4, 20},
                                  {64, 64},
                                  {5, 33}}) {
            const auto w = random_vec(rng, rows * cols);
            const auto x = random_vec(rng, cols);
            std::vector<double> got(rows);
            variant->matvec(w.data(), rows, cols, x.data(), got.data());
            for (std::size_t r = 0; r < rows; ++r) {
                const double want = simd::scalar_ops().dot(w.data() + r * cols, x.data(), cols);
                CHECK(close(got[r], want, static_cast<double>(cols) * 9.0));
            }
        }
    }
}

TEST_CASE("empty inputs are well-defined") {
    for (const auto* variant : simd::available_ops()) {
        CHECK(variant->dot(nullptr, nullptr, 0) == 0.0);
        CHECK(variant->squared_distance(nullptr, nullptr, 0) == 0.0);
    }
}
