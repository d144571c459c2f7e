#include "tnw/data/dataset.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tnw::data {

void Dataset::append(const Dataset& other) {
    for (std::size_t i = 0; i < other.count(); ++i) {
        features.append_row(other.features.row(i));
        outcomes.push_back(other.outcomes[i]);
        group.push_back(other.group[i]);
        latent.push_back(other.latent[i]);
    }
}

Dataset Dataset::rows_of(Group g) const {
    Dataset out;
    for (std::size_t i = 0; i < count(); ++i) {
        if (group[i] != g)
            continue;
        out.features.append_row(features.row(i));
        out.outcomes.push_back(outcomes[i]);
        out.group.push_back(group[i]);
        out.latent.push_back(latent[i]);
    }
    return out;
}

void Dataset::validate() const {
    const std::size_t n = outcomes.size();
    if (features.rows() != n || group.size() != n || latent.size() != n)
        throw std::invalid_argument("Dataset: row counts disagree");
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(outcomes[i]))
            throw std::invalid_argument("Dataset: non-finite outcome at row " +
                                        std::to_string(i));
        for (double v : features.row(i))
            if (!std::isfinite(v))
                throw std::invalid_argument("Dataset: non-finite feature at row " +
                                            std::to_string(i));
    }
}

NormStats outcome_stats(const std::vector<double>& outcomes, Group scope) {
    if (outcomes.empty())
        throw std::invalid_argument(std::string("normalize_outcomes: empty ") +
                                    group_name(scope) + " group");
    double mean = 0.0;
    for (double y : outcomes)
        mean += y;
    mean /= static_cast<double>(outcomes.size());
    double var = 0.0;
    for (double y : outcomes)
        var += (y - mean) * (y - mean);
    var /= static_cast<double>(outcomes.size());
    double sd = std::sqrt(var);
    if (sd < 1e-12)
        sd = 1.0;
    return {mean, sd, scope};
}

NormalizedOutcomes normalize_outcomes(const Dataset& train) {
    std::vector<double> control_y;
    std::vector<double> treatment_y;
    for (std::size_t i = 0; i < train.count(); ++i)
        (train.group[i] == Group::Control ? control_y : treatment_y)
            .push_back(train.outcomes[i]);

    NormalizedOutcomes result;
    result.control = outcome_stats(control_y, Group::Control);
    result.treatment = outcome_stats(treatment_y, Group::Treatment);
    result.data = train;
    for (std::size_t i = 0; i < train.count(); ++i)
        result.data.outcomes[i] =
            normalize_value(train.outcomes[i], result.stats(train.group[i]));
    return result;
}

} // namespace tnw::data
