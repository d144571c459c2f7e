#pragma once
// Bias-corrected adaptive-moment optimizer over a flat parameter vector.

#include <cstdint>
#include <span>
#include <vector>

namespace tnw::nn {

struct AdamConfig {
    double step_size = 1e-3;
    double decay1 = 0.9;
    double decay2 = 0.999;
    double epsilon = 1e-8;
};

class AdamState {
public:
    AdamState(std::size_t param_count, AdamConfig config = {});

    // In-place update; throws on a non-finite gradient, naming the entry.
    void step(std::span<double> params, std::span<const double> grads);

    std::uint64_t step_count() const { return step_count_; }
    const AdamConfig& config() const { return config_; }
    std::span<const double> first_moment() const { return m_; }
    std::span<const double> second_moment() const { return v_; }

private:
    AdamConfig config_;
    std::vector<double> m_;
    std::vector<double> v_;
    std::uint64_t step_count_ = 0;
};

} // namespace tnw::nn
