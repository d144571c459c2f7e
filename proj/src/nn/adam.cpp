#include "tnw/nn/adam.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tnw::nn {

AdamState::AdamState(std::size_t param_count, AdamConfig config)
    : config_(config), m_(param_count, 0.0), v_(param_count, 0.0) {}

void AdamState::step(std::span<double> params, std::span<const double> grads) {
    if (params.size() != m_.size() || grads.size() != m_.size())
        throw std::invalid_argument("AdamState::step: size mismatch, state holds " +
                                    std::to_string(m_.size()) + " parameters");
    for (std::size_t i = 0; i < grads.size(); ++i)
        if (!std::isfinite(grads[i]))
            throw std::runtime_error("AdamState::step: non-finite gradient at parameter " +
                                     std::to_string(i));

    ++step_count_;
    const double b1 = config_.decay1;
    const double b2 = config_.decay2;
    const double correction1 = 1.0 - std::pow(b1, static_cast<double>(step_count_));
    const double correction2 = 1.0 - std::pow(b2, static_cast<double>(step_count_));
    for (std::size_t i = 0; i < params.size(); ++i) {
        m_[i] = b1 * m_[i] + (1.0 - b1) * grads[i];
        v_[i] = b2 * v_[i] + (1.0 - b2) * grads[i] * grads[i];
        const double m_hat = m_[i] / correction1;
        const double v_hat = v_[i] / correction2;
        params[i] -= config_.step_size * m_hat / (std::sqrt(v_hat) + config_.epsilon);
    }
}

} // namespace tnw::nn
