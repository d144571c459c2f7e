#pragma once
// Nadaraya-Watson regression with the fixed Gaussian kernel
// K(z, x, gamma) = exp(-|z - x|^2 / gamma), evaluated in log space so the
// paper's full bandwidth grid (1e-8 .. 1e10) stays finite.

#include "tnw/baselines/regressor.hpp"

#include <vector>

namespace tnw::baselines {

class GaussianNw final : public Regressor {
public:
    explicit GaussianNw(double gamma);

    void fit(const Matrix& features, std::span<const double> outcomes) override;
    double predict(std::span<const double> query) const override;
    std::unique_ptr<Regressor> clone_unfitted() const override;
    nlohmann::json to_json() const override;
    static GaussianNw from_json(const nlohmann::json& j);

    double gamma() const { return gamma_; }
    // Normalized kernel weights at a query; always a valid distribution.
    std::vector<double> weights(std::span<const double> query) const;

private:
    double gamma_;
    Matrix x_;
    std::vector<double> y_;
};

} // namespace tnw::baselines
