#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tnw/nn/adam.hpp"
#include "tnw/nn/checkpoint.hpp"
#include "tnw/nn/mlp.hpp"
#include "tnw/rng.hpp"

#include <cmath>
#include <sstream>
#include <vector>

using namespace tnw;
using nn::Activation;
using nn::KernelMlp;
using nn::LayerShape;

namespace {

// Finite-difference oracle, independent of backward().
std::vector<double> fd_gradient(KernelMlp& net, std::span<const double> input,
                                double step = 1e-5) {
    std::vector<double> grad(net.param_count());
    auto params = net.mutable_params();
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double saved = params[i];
        params[i] = saved + step;
        const double up = net.score(input);
        params[i] = saved - step;
        const double down = net.score(input);
        params[i] = saved;
        grad[i] = (up - down) / (2.0 * step);
    }
    return grad;
}

} // namespace

TEST_CASE("forward: single identity layer picking the first input") {
    KernelMlp net = KernelMlp::from_shapes(2, {{2, 1, Activation::Identity}});
    auto w = net.mutable_weights(0);
    w[0] = 1.0;
    w[1] = 0.0;
    const std::vector<double> input{1.0, 2.0};
    CHECK(net.score(input) == 1.0);
}

TEST_CASE("forward: all-zero parameters give a zero score") {
    KernelMlp net = KernelMlp::from_shapes(
        3, {{3, 4, Activation::Tanh}, {4, 1, Activation::Identity}});
    const std::vector<double> input{0.4, -2.0, 5.5};
    CHECK(net.score(input) == 0.0);
}

TEST_CASE("forward: two-layer composition matches a straight-line evaluation") {
    KernelMlp net = KernelMlp::from_shapes(
        2, {{2, 2, Activation::Tanh}, {2, 1, Activation::Identity}});
    auto w0 = net.mutable_weights(0);
    w0[0] = 0.1;
    w0[1] = -0.2;
    w0[2] = 0.3;
    w0[3] = 0.4;
    auto b0 = net.mutable_biases(0);
    b0[0] = 0.05;
    b0[1] = -0.15;
    auto w1 = net.mutable_weights(1);
    w1[0] = 0.7;
    w1[1] = -0.6;
    auto b1 = net.mutable_biases(1);
    b1[0] = 0.01;

    const double x0 = 0.5, x1 = -0.5;
    const double h0 = std::tanh(0.1 * x0 + (-0.2) * x1 + 0.05);
    const double h1 = std::tanh(0.3 * x0 + 0.4 * x1 + (-0.15));
    const double expected = 0.7 * h0 + (-0.6) * h1 + 0.01;

    const std::vector<double> input{x0, x1};
    CHECK(net.score(input) == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("forward rejects wrong input lengths") {
    RngStream rng(1);
    const std::vector<std::size_t> hidden{4};
    KernelMlp net = KernelMlp::create(6, hidden, rng);
    const std::vector<double> bad(5, 0.0);
    CHECK_THROWS_WITH_AS(net.score(bad), doctest::Contains("expected input of length 6"),
                         std::invalid_argument);
}

TEST_CASE("backward: zero upstream gives a zero gradient") {
    RngStream rng(3);
    const std::vector<std::size_t> hidden{5, 5};
    KernelMlp net = KernelMlp::create(4, hidden, rng);
    const std::vector<double> input{0.1, 0.2, -0.3, 0.4};
    nn::ForwardCache cache;
    net.forward(input, cache);
    std::vector<double> grad(net.param_count(), 0.0);
    net.backward(cache, 0.0, grad);
    for (double g : grad)
        CHECK(g == 0.0);
}

TEST_CASE("backward: linear net gradient is (x, 1)") {
    KernelMlp net = KernelMlp::from_shapes(3, {{3, 1, Activation::Identity}});
    auto w = net.mutable_weights(0);
    w[0] = 0.3;
    w[1] = -0.8;
    w[2] = 0.05;
    const std::vector<double> input{1.5, -2.5, 4.0};
    nn::ForwardCache cache;
    net.forward(input, cache);
    std::vector<double> grad(net.param_count(), 0.0);
    net.backward(cache, 1.0, grad);
    CHECK(grad[0] == 1.5);
    CHECK(grad[1] == -2.5);
    CHECK(grad[2] == 4.0);
    CHECK(grad[3] == 1.0); // bias
}

TEST_CASE("backward matches the finite-difference oracle on a random tanh net") {
    RngStream rng(17);
    const std::vector<std::size_t> hidden{8, 6};
    KernelMlp net = KernelMlp::create(5, hidden, rng);
    std::vector<double> input(5);
    for (double& v : input)
        v = rng.uniform(-1.0, 1.0);

    nn::ForwardCache cache;
    net.forward(input, cache);
    std::vector<double> analytic(net.param_count(), 0.0);
    net.backward(cache, 1.0, analytic);

    const std::vector<double> numeric = fd_gradient(net, input);
    for (std::size_t i = 0; i < analytic.size(); ++i) {
        const double denom =
            std::max({std::abs(analytic[i]), std::abs(numeric[i]), 1e-10});
        CHECK(std::abs(analytic[i] - numeric[i]) / denom < 1e-4);
    }
}

TEST_CASE("backward rejects a stale cache") {
    RngStream rng(5);
    const std::vector<std::size_t> hidden{4};
    KernelMlp net = KernelMlp::create(3, hidden, rng);
    const std::vector<double> input{0.1, 0.2, 0.3};
    nn::ForwardCache cache;
    net.forward(input, cache);
    net.mutable_params()[0] += 0.5; // mutate
    std::vector<double> grad(net.param_count(), 0.0);
    CHECK_THROWS_AS(net.backward(cache, 1.0, grad), std::logic_error);
}

TEST_CASE("weight sharing: repeated evaluation of the same pair is bitwise stable") {
    RngStream rng(11);
    const std::vector<std::size_t> hidden{16, 16};
    KernelMlp net = KernelMlp::create(8, hidden, rng);
    std::vector<double> input(8);
    for (double& v : input)
        v = rng.uniform(-2.0, 2.0);
    const double first = net.score(input);
    nn::ForwardCache cache;
    for (int i = 0; i < 5; ++i) {
        CHECK(net.score(input) == first);
        CHECK(net.forward(input, cache) == first);
    }
}

TEST_CASE("grad_check: exact for a linear net") {
    KernelMlp net = KernelMlp::from_shapes(4, {{4, 1, Activation::Identity}});
    auto w = net.mutable_weights(0);
    for (std::size_t i = 0; i < w.size(); ++i)
        w[i] = 0.25 * static_cast<double>(i + 1);
    const std::vector<double> input{1.0, -2.0, 0.5, 3.0};
    const auto report = nn::grad_check(net, input, 1e-8);
    CHECK(report.passed);
    CHECK(report.worst_rel_error < 1e-8);
}

TEST_CASE("grad_check: random tanh net passes at 1e-4") {
    RngStream rng(23);
    const std::vector<std::size_t> hidden{10, 10};
    KernelMlp net = KernelMlp::create(6, hidden, rng);
    std::vector<double> input(6);
    for (double& v : input)
        v = rng.uniform(-1.0, 1.0);
    const auto report = nn::grad_check(net, input, 1e-4);
    CHECK(report.passed);
}

TEST_CASE("grad_check: a corrupted gradient entry is reported by index") {
    RngStream rng(29);
    const std::vector<std::size_t> hidden{6};
    KernelMlp net = KernelMlp::create(4, hidden, rng);
    std::vector<double> input{0.7, -0.4, 0.2, 0.9};

    nn::ForwardCache cache;
    net.forward(input, cache);
    std::vector<double> analytic(net.param_count(), 0.0);
    net.backward(cache, 1.0, analytic);

    // corrupt the largest entry so the ratio test cannot miss it
    std::size_t victim = 0;
    for (std::size_t i = 0; i < analytic.size(); ++i)
        if (std::abs(analytic[i]) > std::abs(analytic[victim]))
            victim = i;
    analytic[victim] *= 2.0;

    const auto report = nn::grad_check_against(net, input, analytic, 1e-4);
    CHECK(!report.passed);
    bool named = false;
    for (const auto& f : report.failures)
        named |= f.param_index == victim;
    CHECK(named);
}

TEST_CASE("adam: zero gradient leaves parameters unchanged") {
    std::vector<double> params{1.0, -2.0, 3.0};
    const std::vector<double> grads{0.0, 0.0, 0.0};
    nn::AdamState state(3);
    state.step(params, grads);
    CHECK(params[0] == 1.0);
    CHECK(params[1] == -2.0);
    CHECK(params[2] == 3.0);
    CHECK(state.step_count() == 1);
}

TEST_CASE("adam: bias-corrected first step moves by -step_size") {
    std::vector<double> params{0.0};
    const std::vector<double> grads{1.0};
    nn::AdamConfig cfg;
    cfg.step_size = 0.1;
    nn::AdamState state(1, cfg);
    state.step(params, grads);
    // m_hat = 1, v_hat = 1 after correction: step = -0.1 / (1 + eps)
    CHECK(params[0] == doctest::Approx(-0.1).epsilon(1e-7));
}

TEST_CASE("adam: identical parameter/gradient pairs update identically") {
    std::vector<double> params{0.7, 0.7};
    nn::AdamState state(2);
    for (int iter = 0; iter < 25; ++iter) {
        const std::vector<double> grads{0.3 * iter - 1.0, 0.3 * iter - 1.0};
        state.step(params, grads);
        CHECK(params[0] == params[1]);
    }
}

TEST_CASE("adam rejects non-finite gradients naming the entry") {
    std::vector<double> params{0.0, 0.0};
    const std::vector<double> grads{0.0, std::numeric_limits<double>::quiet_NaN()};
    nn::AdamState state(2);
    CHECK_THROWS_WITH_AS(state.step(params, grads), doctest::Contains("parameter 1"),
                         std::runtime_error);
}

TEST_CASE("checkpoint round trip is value-identical") {
    RngStream rng(31);
    const std::vector<std::size_t> hidden{12, 7};
    KernelMlp net = KernelMlp::create(9, hidden, rng);

    std::stringstream buf;
    nn::save_checkpoint(net, buf);
    KernelMlp reloaded = nn::load_checkpoint(buf);

    REQUIRE(reloaded.param_count() == net.param_count());
    REQUIRE(reloaded.input_dim() == net.input_dim());
    for (std::size_t i = 0; i < net.param_count(); ++i)
        CHECK(reloaded.params()[i] == net.params()[i]);

    // save(load(x)) is byte-identical
    std::stringstream buf2;
    nn::save_checkpoint(reloaded, buf2);
    CHECK(buf.str() == buf2.str());
}
