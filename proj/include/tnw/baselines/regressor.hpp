#pragma once
// Uniform fit/predict contract the meta-learners compose over.

#include "tnw/matrix.hpp"

#include <filesystem>
#include <memory>
#include <span>

#include <json.hpp>

namespace tnw::baselines {

class Regressor {
public:
    virtual ~Regressor() = default;
    virtual void fit(const Matrix& features, std::span<const double> outcomes) = 0;
    virtual double predict(std::span<const double> query) const = 0;
    // Fresh unfitted copy with the same hyperparameters (meta-learners fit
    // several stages from one prototype).
    virtual std::unique_ptr<Regressor> clone_unfitted() const = 0;
    virtual nlohmann::json to_json() const = 0;
};

std::unique_ptr<Regressor> regressor_from_json(const nlohmann::json& j);

} // namespace tnw::baselines
