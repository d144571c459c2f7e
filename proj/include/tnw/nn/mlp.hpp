#pragma once
// Dense feed-forward net with a single scalar output: the trainable kernel.
// One parameter vector is shared by every (query, key) pair evaluation, so
// scoring a batch of pairs through one net equals scoring them one by one.

#include "tnw/rng.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tnw::nn {

enum class Activation { Tanh, Identity };

std::string activation_name(Activation a);
Activation activation_from_name(std::string_view name);

struct LayerShape {
    std::size_t in = 0;
    std::size_t out = 0;
    Activation activation = Activation::Identity;
};

// Per-layer activation trace captured by forward(), consumed by backward().
struct ForwardCache {
    std::uint64_t net_version = 0;
    std::vector<double> input;
    std::vector<std::vector<double>> outputs; // post-activation per layer
};

class KernelMlp {
public:
    KernelMlp() = default;

    // Hidden tanh layers of the given widths, then a 1-wide identity output.
    // Weights are Glorot-uniform from the stream, biases zero.
    static KernelMlp create(std::size_t input_dim, std::span<const std::size_t> hidden,
                            RngStream& init);

    // Explicit shapes; all parameters zero. Used by tests and checkpoint load.
    static KernelMlp from_shapes(std::size_t input_dim, std::vector<LayerShape> shapes);

    std::size_t input_dim() const { return input_dim_; }
    std::size_t param_count() const { return params_.size(); }
    const std::vector<LayerShape>& layers() const { return shapes_; }

    std::span<const double> params() const { return params_; }
    // Mutation entry point; bumps the version so stale caches are rejected.
    std::span<double> mutable_params() {
        ++version_;
        return params_;
    }
    std::uint64_t version() const { return version_; }

    std::span<const double> weights(std::size_t layer) const;
    std::span<double> mutable_weights(std::size_t layer);
    std::span<const double> biases(std::size_t layer) const;
    std::span<double> mutable_biases(std::size_t layer);

    // Score without retaining the trace.
    double score(std::span<const double> input) const;

    // Score and capture the trace needed by backward().
    double forward(std::span<const double> input, ForwardCache& cache) const;

    // Accumulates d(upstream * score)/d(theta) into grad (size param_count).
    void backward(const ForwardCache& cache, double upstream,
                  std::span<double> grad) const;

private:
    struct LayerOffsets {
        std::size_t w = 0;
        std::size_t b = 0;
    };

    void check_input(std::size_t n) const;

    std::size_t input_dim_ = 0;
    std::vector<LayerShape> shapes_;
    std::vector<LayerOffsets> offsets_;
    std::vector<double> params_;
    std::uint64_t version_ = 0;
};

struct GradCheckEntry {
    std::size_t param_index = 0;
    double analytic = 0.0;
    double numeric = 0.0;
    double rel_error = 0.0;
};

struct GradCheckReport {
    bool passed = true;
    double worst_rel_error = 0.0;
    std::size_t worst_param_index = 0;
    std::vector<GradCheckEntry> failures;
};

// Central finite differences of the score against an externally supplied
// analytic gradient.
GradCheckReport grad_check_against(KernelMlp& net, std::span<const double> input,
                                   std::span<const double> analytic, double tolerance,
                                   double fd_step = 1e-5);

// Same, with the analytic gradient computed by backward().
GradCheckReport grad_check(KernelMlp& net, std::span<const double> input,
                           double tolerance, double fd_step = 1e-5);

} // namespace tnw::nn
