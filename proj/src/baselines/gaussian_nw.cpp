#include "tnw/baselines/gaussian_nw.hpp"

#include "tnw/simd/ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tnw::baselines {

GaussianNw::GaussianNw(double gamma) : gamma_(gamma) {
    if (!(gamma > 0.0))
        throw std::invalid_argument("GaussianNw: bandwidth must be positive");
}

void GaussianNw::fit(const Matrix& features, std::span<const double> outcomes) {
    if (features.rows() != outcomes.size())
        throw std::invalid_argument("GaussianNw::fit: row counts disagree");
    if (features.rows() == 0)
        throw std::invalid_argument("GaussianNw::fit: empty training set");
    x_ = features;
    y_.assign(outcomes.begin(), outcomes.end());
}

std::vector<double> GaussianNw::weights(std::span<const double> query) const {
    if (x_.rows() == 0)
        throw std::logic_error("GaussianNw: predict before fit");
    if (query.size() != x_.cols())
        throw std::invalid_argument("GaussianNw: query dimension mismatch");

    std::vector<double> logk(x_.rows());
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x_.rows(); ++i) {
        const auto row = x_.row(i);
        logk[i] = -simd::squared_distance(query.data(), row.data(), row.size()) / gamma_;
        m = std::max(m, logk[i]);
    }
    double total = 0.0;
    for (double& v : logk) {
        v = std::exp(v - m); // the max entry becomes 1, so total >= 1
        total += v;
    }
    for (double& v : logk)
        v /= total;
    return logk;
}

double GaussianNw::predict(std::span<const double> query) const {
    const std::vector<double> w = weights(query);
    return simd::dot(w.data(), y_.data(), w.size());
}

std::unique_ptr<Regressor> GaussianNw::clone_unfitted() const {
    return std::make_unique<GaussianNw>(gamma_);
}

nlohmann::json GaussianNw::to_json() const {
    nlohmann::json j;
    j["type"] = "gaussian_nw";
    j["gamma"] = gamma_;
    j["d"] = x_.cols();
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < x_.rows(); ++i) {
        const auto r = x_.row(i);
        rows.push_back(std::vector<double>(r.begin(), r.end()));
    }
    j["x"] = std::move(rows);
    j["y"] = y_;
    return j;
}

GaussianNw GaussianNw::from_json(const nlohmann::json& j) {
    GaussianNw model(j.at("gamma").get<double>());
    const auto rows = j.at("x").get<std::vector<std::vector<double>>>();
    model.x_ = Matrix(0, j.at("d").get<std::size_t>());
    for (const auto& r : rows)
        model.x_.append_row(r);
    model.y_ = j.at("y").get<std::vector<double>>();
    if (model.x_.rows() != model.y_.size())
        throw std::runtime_error("gaussian_nw json: row counts disagree");
    return model;
}

} // namespace tnw::baselines
