#include "tnw/baselines/meta.hpp"

#include "tnw/baselines/forest.hpp"
#include "tnw/baselines/gaussian_nw.hpp"

#include <stdexcept>
#include <vector>

namespace tnw::baselines {

namespace {

void require_nonempty(const data::Dataset& control, const data::Dataset& treatment,
                      std::size_t minimum, const char* who) {
    if (control.count() < minimum || treatment.count() < minimum)
        throw std::invalid_argument(std::string(who) + ": each group needs at least " +
                                    std::to_string(minimum) + " rows");
    if (control.dim() != treatment.dim())
        throw std::invalid_argument(std::string(who) + ": feature dimensions disagree");
}

} // namespace

std::unique_ptr<Regressor> regressor_from_json(const nlohmann::json& j) {
    const auto type = j.at("type").get<std::string>();
    if (type == "forest")
        return std::make_unique<Forest>(Forest::from_json(j));
    if (type == "gaussian_nw")
        return std::make_unique<GaussianNw>(GaussianNw::from_json(j));
    throw std::runtime_error("unknown regressor type '" + type + "'");
}

// ---------------------------------------------------------------------------
// T-learner

TLearner::TLearner(std::unique_ptr<Regressor> base) : g0_(std::move(base)) {
    g1_ = g0_->clone_unfitted();
}

void TLearner::fit(const data::Dataset& control, const data::Dataset& treatment) {
    require_nonempty(control, treatment, 1, "TLearner");
    g0_->fit(control.features, control.outcomes);
    g1_->fit(treatment.features, treatment.outcomes);
}

double TLearner::predict_g0(std::span<const double> query) const { return g0_->predict(query); }
double TLearner::predict_g1(std::span<const double> query) const { return g1_->predict(query); }

double TLearner::cate(std::span<const double> query) const {
    return g1_->predict(query) - g0_->predict(query);
}

nlohmann::json TLearner::to_json() const {
    return {{"kind", "T"}, {"g0", g0_->to_json()}, {"g1", g1_->to_json()}};
}

TLearner TLearner::from_json(const nlohmann::json& j) {
    TLearner t;
    t.g0_ = regressor_from_json(j.at("g0"));
    t.g1_ = regressor_from_json(j.at("g1"));
    return t;
}

// ---------------------------------------------------------------------------
// S-learner

SLearner::SLearner(std::unique_ptr<Regressor> base) : g_(std::move(base)) {}

void SLearner::fit(const data::Dataset& control, const data::Dataset& treatment) {
    require_nonempty(control, treatment, 1, "SLearner");
    d_ = control.dim();
    Matrix augmented(0, d_ + 1);
    std::vector<double> outcomes;
    std::vector<double> row(d_ + 1);
    for (const data::Dataset* ds : {&control, &treatment}) {
        const double indicator = ds == &control ? 0.0 : 1.0;
        for (std::size_t i = 0; i < ds->count(); ++i) {
            const auto x = ds->features.row(i);
            std::copy(x.begin(), x.end(), row.begin());
            row[d_] = indicator;
            augmented.append_row(row);
            outcomes.push_back(ds->outcomes[i]);
        }
    }
    g_->fit(augmented, outcomes);
}

double SLearner::predict_response(std::span<const double> query, double indicator) const {
    std::vector<double> augmented(query.begin(), query.end());
    augmented.push_back(indicator);
    return g_->predict(augmented);
}

double SLearner::cate(std::span<const double> query) const {
    return predict_response(query, 1.0) - predict_response(query, 0.0);
}

nlohmann::json SLearner::to_json() const {
    return {{"kind", "S"}, {"d", d_}, {"g", g_->to_json()}};
}

SLearner SLearner::from_json(const nlohmann::json& j) {
    SLearner s;
    s.g_ = regressor_from_json(j.at("g"));
    s.d_ = j.at("d").get<std::size_t>();
    return s;
}

// ---------------------------------------------------------------------------
// X-learner

XLearner::XLearner(std::unique_ptr<Regressor> base, std::optional<double> alpha_x)
    : g0_(std::move(base)), alpha_x_(alpha_x) {
    if (alpha_x_ && !(*alpha_x_ >= 0.0 && *alpha_x_ <= 1.0))
        throw std::invalid_argument("XLearner: alpha_x must lie in [0, 1]");
    g1_ = g0_->clone_unfitted();
    tau0_ = g0_->clone_unfitted();
    tau1_ = g0_->clone_unfitted();
}

void XLearner::fit(const data::Dataset& control, const data::Dataset& treatment) {
    require_nonempty(control, treatment, 2, "XLearner");
    const std::size_t c = control.count();
    const std::size_t t = treatment.count();

    g0_->fit(control.features, control.outcomes);
    g1_->fit(treatment.features, treatment.outcomes);

    std::vector<double> d1(t);
    for (std::size_t i = 0; i < t; ++i)
        d1[i] = treatment.outcomes[i] - g0_->predict(treatment.features.row(i));
    std::vector<double> d0(c);
    for (std::size_t i = 0; i < c; ++i)
        d0[i] = g1_->predict(control.features.row(i)) - control.outcomes[i];

    tau1_->fit(treatment.features, d1);
    tau0_->fit(control.features, d0);

    alpha_x_resolved_ =
        alpha_x_ ? *alpha_x_
                 : static_cast<double>(t) / static_cast<double>(c + t);
}

double XLearner::predict_g0(std::span<const double> query) const { return g0_->predict(query); }
double XLearner::predict_g1(std::span<const double> query) const { return g1_->predict(query); }

double XLearner::cate(std::span<const double> query) const {
    return alpha_x_resolved_ * tau0_->predict(query) +
           (1.0 - alpha_x_resolved_) * tau1_->predict(query);
}

nlohmann::json XLearner::to_json() const {
    return {{"kind", "X"},
            {"alpha_x", alpha_x_resolved_},
            {"g0", g0_->to_json()},
            {"g1", g1_->to_json()},
            {"tau0", tau0_->to_json()},
            {"tau1", tau1_->to_json()}};
}

XLearner XLearner::from_json(const nlohmann::json& j) {
    XLearner x;
    x.g0_ = regressor_from_json(j.at("g0"));
    x.g1_ = regressor_from_json(j.at("g1"));
    x.tau0_ = regressor_from_json(j.at("tau0"));
    x.tau1_ = regressor_from_json(j.at("tau1"));
    x.alpha_x_resolved_ = j.at("alpha_x").get<double>();
    return x;
}

// ---------------------------------------------------------------------------

double t_learner_cate(const data::Dataset& control, const data::Dataset& treatment,
                      const Regressor& base, std::span<const double> query) {
    TLearner learner(base.clone_unfitted());
    learner.fit(control, treatment);
    return learner.cate(query);
}

double s_learner_cate(const data::Dataset& control, const data::Dataset& treatment,
                      const Regressor& base, std::span<const double> query) {
    SLearner learner(base.clone_unfitted());
    learner.fit(control, treatment);
    return learner.cate(query);
}

double x_learner_cate(const data::Dataset& control, const data::Dataset& treatment,
                      const Regressor& base, std::optional<double> alpha_x,
                      std::span<const double> query) {
    XLearner learner(base.clone_unfitted(), alpha_x);
    learner.fit(control, treatment);
    return learner.cate(query);
}

} // namespace tnw::baselines
