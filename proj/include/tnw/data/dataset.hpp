#pragma once
// Control/treatment sample containers and outcome normalization.

#include "tnw/matrix.hpp"

#include <limits>
#include <vector>

namespace tnw::data {

enum class Group : int { Control = 0, Treatment = 1 };

inline const char* group_name(Group g) {
    return g == Group::Control ? "control" : "treatment";
}

struct Dataset {
    Matrix features;              // count x d
    std::vector<double> outcomes; // y for controls, h for treatments
    std::vector<Group> group;
    // Generator parameter behind each row; NaN for families without one.
    std::vector<double> latent;

    std::size_t count() const { return outcomes.size(); }
    std::size_t dim() const { return features.cols(); }

    void append(const Dataset& other);
    Dataset rows_of(Group g) const;
    void validate() const; // shape agreement + finiteness
};

constexpr double kMissingLatent = std::numeric_limits<double>::quiet_NaN();

struct NormStats {
    double mean = 0.0;
    double std_dev = 1.0;
    Group scope = Group::Control;
};

inline double normalize_value(double y, const NormStats& s) { return (y - s.mean) / s.std_dev; }
inline double denormalize_value(double z, const NormStats& s) { return z * s.std_dev + s.mean; }

struct NormalizedOutcomes {
    Dataset data; // outcomes replaced by per-group z-scores
    NormStats control;
    NormStats treatment;

    const NormStats& stats(Group g) const {
        return g == Group::Control ? control : treatment;
    }
};

// Per-group z-score with the population std convention; std below 1e-12 is
// clamped to 1 so degenerate draws stay finite. Errors on an empty group.
NormalizedOutcomes normalize_outcomes(const Dataset& train);

// Stats of one outcome vector (population convention, clamped).
NormStats outcome_stats(const std::vector<double>& outcomes, Group scope);

} // namespace tnw::data
