#pragma once
// T/S/X meta-learners over any base regressor. All stages clone the base
// prototype, so hyperparameters and seeds are shared across stages.

#include "tnw/baselines/regressor.hpp"
#include "tnw/data/dataset.hpp"

#include <filesystem>
#include <memory>
#include <optional>

namespace tnw::baselines {

// Separate per-group response fits; cate = g1(q) - g0(q).
class TLearner {
public:
    explicit TLearner(std::unique_ptr<Regressor> base);

    void fit(const data::Dataset& control, const data::Dataset& treatment);
    double predict_g0(std::span<const double> query) const;
    double predict_g1(std::span<const double> query) const;
    double cate(std::span<const double> query) const;

    nlohmann::json to_json() const;
    static TLearner from_json(const nlohmann::json& j);

private:
    TLearner() = default;
    std::unique_ptr<Regressor> g0_;
    std::unique_ptr<Regressor> g1_;
};

// One fit over rows augmented with the group indicator as feature d+1;
// cate = g(q,1) - g(q,0).
class SLearner {
public:
    explicit SLearner(std::unique_ptr<Regressor> base);

    void fit(const data::Dataset& control, const data::Dataset& treatment);
    double predict_response(std::span<const double> query, double indicator) const;
    double predict_g0(std::span<const double> query) const { return predict_response(query, 0.0); }
    double predict_g1(std::span<const double> query) const { return predict_response(query, 1.0); }
    double cate(std::span<const double> query) const;

    nlohmann::json to_json() const;
    static SLearner from_json(const nlohmann::json& j);

private:
    SLearner() = default;
    std::unique_ptr<Regressor> g_;
    std::size_t d_ = 0;
};

// Three stages: response fits g0/g1, imputed effects D1 = h - g0(z) and
// D0 = g1(x) - y, then effect fits tau1/tau0 blended by the treated ratio.
class XLearner {
public:
    // alpha_x unset resolves to t / (c + t) at fit time.
    XLearner(std::unique_ptr<Regressor> base, std::optional<double> alpha_x = std::nullopt);

    void fit(const data::Dataset& control, const data::Dataset& treatment);
    double predict_g0(std::span<const double> query) const;
    double predict_g1(std::span<const double> query) const;
    double cate(std::span<const double> query) const;
    double alpha_x() const { return alpha_x_resolved_; }

    nlohmann::json to_json() const;
    static XLearner from_json(const nlohmann::json& j);

private:
    XLearner() = default;
    std::unique_ptr<Regressor> g0_;
    std::unique_ptr<Regressor> g1_;
    std::unique_ptr<Regressor> tau0_;
    std::unique_ptr<Regressor> tau1_;
    std::optional<double> alpha_x_;
    double alpha_x_resolved_ = 0.0;
};

// One-shot forms used by tests and small scripts: fit on the two groups,
// evaluate the effect at a single query.
double t_learner_cate(const data::Dataset& control, const data::Dataset& treatment,
                      const Regressor& base, std::span<const double> query);
double s_learner_cate(const data::Dataset& control, const data::Dataset& treatment,
                      const Regressor& base, std::span<const double> query);
double x_learner_cate(const data::Dataset& control, const data::Dataset& treatment,
                      const Regressor& base, std::optional<double> alpha_x,
                      std::span<const double> query);

} // namespace tnw::baselines
