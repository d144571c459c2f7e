#include "tnw/nn/mlp.hpp"

#include "tnw/simd/ops.hpp"

#include <cmath>
#include <stdexcept>

namespace tnw::nn {

std::string activation_name(Activation a) {
    return a == Activation::Tanh ? "tanh" : "identity";
}

Activation activation_from_name(std::string_view name) {
    if (name == "tanh")
        return Activation::Tanh;
    if (name == "identity")
        return Activation::Identity;
    throw std::invalid_argument("unknown activation '" + std::string(name) + "'");
}

KernelMlp KernelMlp::from_shapes(std::size_t input_dim, std::vector<LayerShape> shapes) {
    if (input_dim == 0)
        throw std::invalid_argument("KernelMlp: input_dim must be positive");
    std::size_t prev = input_dim;
    for (const LayerShape& s : shapes) {
        if (s.in != prev)
            throw std::invalid_argument("KernelMlp: layer input " + std::to_string(s.in) +
                                        " does not chain from " + std::to_string(prev));
        if (s.out == 0)
            throw std::invalid_argument("KernelMlp: layer output must be positive");
        prev = s.out;
    }
    if (shapes.empty() || shapes.back().out != 1 ||
        shapes.back().activation != Activation::Identity)
        throw std::invalid_argument("KernelMlp: final layer must be a 1-wide identity");

    KernelMlp net;
    net.input_dim_ = input_dim;
    net.shapes_ = std::move(shapes);
    std::size_t total = 0;
    for (const LayerShape& s : net.shapes_) {
        net.offsets_.push_back({total, total + s.in * s.out});
        total += s.in * s.out + s.out;
    }
    net.params_.assign(total, 0.0);
    return net;
}

KernelMlp KernelMlp::create(std::size_t input_dim, std::span<const std::size_t> hidden,
                            RngStream& init) {
    std::vector<LayerShape> shapes;
    std::size_t prev = input_dim;
    for (std::size_t width : hidden) {
        shapes.push_back({prev, width, Activation::Tanh});
        prev = width;
    }
    shapes.push_back({prev, 1, Activation::Identity});

    KernelMlp net = from_shapes(input_dim, std::move(shapes));
    for (std::size_t l = 0; l < net.shapes_.size(); ++l) {
        const LayerShape& s = net.shapes_[l];
        const double bound = std::sqrt(6.0 / static_cast<double>(s.in + s.out));
        for (double& w : net.mutable_weights(l))
            w = init.uniform(-bound, bound);
    }
    return net;
}

std::span<const double> KernelMlp::weights(std::size_t layer) const {
    const LayerShape& s = shapes_[layer];
    return {params_.data() + offsets_[layer].w, s.in * s.out};
}

std::span<double> KernelMlp::mutable_weights(std::size_t layer) {
    ++version_;
    const LayerShape& s = shapes_[layer];
    return {params_.data() + offsets_[layer].w, s.in * s.out};
}

std::span<const double> KernelMlp::biases(std::size_t layer) const {
    return {params_.data() + offsets_[layer].b, shapes_[layer].out};
}

std::span<double> KernelMlp::mutable_biases(std::size_t layer) {
    ++version_;
    return {params_.data() + offsets_[layer].b, shapes_[layer].out};
}

void KernelMlp::check_input(std::size_t n) const {
    if (n != input_dim_)
        throw std::invalid_argument("KernelMlp: expected input of length " +
                                    std::to_string(input_dim_) + ", got " +
                                    std::to_string(n));
}

double KernelMlp::score(std::span<const double> input) const {
    check_input(input.size());
    std::vector<double> cur(input.begin(), input.end());
    std::vector<double> next;
    for (std::size_t l = 0; l < shapes_.size(); ++l) {
        const LayerShape& s = shapes_[l];
        next.resize(s.out);
        simd::matvec(params_.data() + offsets_[l].w, s.out, s.in, cur.data(), next.data());
        const double* b = params_.data() + offsets_[l].b;
        for (std::size_t r = 0; r < s.out; ++r) {
            double v = next[r] + b[r];
            next[r] = s.activation == Activation::Tanh ? std::tanh(v) : v;
        }
        cur.swap(next);
    }
    return cur[0];
}

double KernelMlp::forward(std::span<const double> input, ForwardCache& cache) const {
    check_input(input.size());
    cache.net_version = version_;
    cache.input.assign(input.begin(), input.end());
    cache.outputs.resize(shapes_.size());

    const std::vector<double>* cur = &cache.input;
    for (std::size_t l = 0; l < shapes_.size(); ++l) {
        const LayerShape& s = shapes_[l];
        std::vector<double>& out = cache.outputs[l];
        out.resize(s.out);
        simd::matvec(params_.data() + offsets_[l].w, s.out, s.in, cur->data(), out.data());
        const double* b = params_.data() + offsets_[l].b;
        for (std::size_t r = 0; r < s.out; ++r) {
            double v = out[r] + b[r];
            out[r] = s.activation == Activation::Tanh ? std::tanh(v) : v;
        }
        cur = &out;
    }
    return cache.outputs.back()[0];
}

void KernelMlp::backward(const ForwardCache& cache, double upstream,
                         std::span<double> grad) const {
    if (cache.net_version != version_)
        throw std::logic_error("KernelMlp::backward: cache is stale, parameters changed "
                               "since forward");
    if (grad.size() != params_.size())
        throw std::invalid_argument("KernelMlp::backward: gradient buffer size mismatch");
    if (cache.outputs.size() != shapes_.size())
        throw std::invalid_argument("KernelMlp::backward: cache does not match net");

    // delta = dL/d(post-activation) of the current layer
    std::vector<double> delta{upstream};
    std::vector<double> prev_delta;
    for (std::size_t li = shapes_.size(); li-- > 0;) {
        const LayerShape& s = shapes_[li];
        const std::vector<double>& out = cache.outputs[li];
        if (s.activation == Activation::Tanh) {
            for (std::size_t r = 0; r < s.out; ++r)
                delta[r] *= 1.0 - out[r] * out[r];
        }
        const std::vector<double>& in =
            li == 0 ? cache.input : cache.outputs[li - 1];
        double* gw = grad.data() + offsets_[li].w;
        double* gb = grad.data() + offsets_[li].b;
        prev_delta.assign(s.in, 0.0);
        const double* w = params_.data() + offsets_[li].w;
        for (std::size_t r = 0; r < s.out; ++r) {
            const double d = delta[r];
            if (d != 0.0) {
                simd::axpy(d, in.data(), gw + r * s.in, s.in);
                simd::axpy(d, w + r * s.in, prev_delta.data(), s.in);
            }
            gb[r] += d;
        }
        delta.swap(prev_delta);
    }
}

namespace {

double relative_error(double a, double b) {
    const double denom = std::max({std::abs(a), std::abs(b), 1e-10});
    return std::abs(a - b) / denom;
}

} // namespace

GradCheckReport grad_check_against(KernelMlp& net, std::span<const double> input,
                                   std::span<const double> analytic, double tolerance,
                                   double fd_step) {
    if (tolerance <= 0.0)
        throw std::invalid_argument("grad_check: tolerance must be positive");
    if (analytic.size() != net.param_count())
        throw std::invalid_argument("grad_check: analytic gradient size mismatch");

    GradCheckReport report;
    std::span<double> params = net.mutable_params();
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double saved = params[i];
        params[i] = saved + fd_step;
        const double up = net.score(input);
        params[i] = saved - fd_step;
        const double down = net.score(input);
        params[i] = saved;
        const double numeric = (up - down) / (2.0 * fd_step);
        const double rel = relative_error(analytic[i], numeric);
        if (rel > report.worst_rel_error) {
            report.worst_rel_error = rel;
            report.worst_param_index = i;
        }
        if (rel > tolerance) {
            report.passed = false;
            report.failures.push_back({i, analytic[i], numeric, rel});
        }
    }
    net.mutable_params(); // restore a clean version stamp after perturbation
    return report;
}

GradCheckReport grad_check(KernelMlp& net, std::span<const double> input,
                           double tolerance, double fd_step) {
    std::vector<double> analytic(net.param_count(), 0.0);
    ForwardCache cache;
    net.forward(input, cache);
    net.backward(cache, 1.0, analytic);
    return grad_check_against(net, input, analytic, tolerance, fd_step);
}

} // namespace tnw::nn
