#pragma once
// The trained-kernel Nadaraya-Watson CATE estimator. One shared kernel net
// scores (query, key) pairs for both groups; softmax over log-scores gives
// the attention weights, so the effective kernel exp(score) is positive and
// the weights are a distribution by construction.

#include "tnw/data/dataset.hpp"
#include "tnw/model/subsets.hpp"
#include "tnw/nn/adam.hpp"
#include "tnw/nn/mlp.hpp"

#include <filesystem>
#include <span>
#include <vector>

namespace tnw::model {

struct TnwConfig {
    std::size_t n = 80; // control subset size
    std::size_t m = 0;  // treatment subset size; 0 resolves to floor(t/2)
    std::size_t subsets_per_control = 4;   // N
    std::size_t subsets_per_treatment = 4; // M
    double alpha = 0.5;                    // treatment term weight in the loss
    std::size_t epochs = 80;
    std::size_t batch_size = 16;
    std::vector<std::size_t> hidden = {64, 64};
    nn::AdamConfig optimizer;
    std::uint64_t seed = 1;
    bool resample_each_epoch = false;

    // Clamp n/m to the sizes a concrete (c, t) instance allows.
    TnwConfig resolved_for(std::size_t c, std::size_t t) const;
};

struct TnwModel {
    nn::KernelMlp kernel;
    data::Dataset control_set;   // normalized outcomes
    data::Dataset treatment_set; // normalized outcomes
    data::NormStats control_stats;
    data::NormStats treatment_stats;
};

struct TnwTrainResult {
    TnwModel model;
    std::vector<double> epoch_loss; // joint loss accumulated over each epoch
};

// Softmax attention over per-pair kernel scores. Weights are non-negative
// and sum to 1; any constant shift of the scores cancels.
std::vector<double> attention_weights(const nn::KernelMlp& kernel,
                                      std::span<const double> target,
                                      const Matrix& neighbors);

// Weighted average of outcomes under an attention-weight vector.
double nw_head(std::span<const double> weights, std::span<const double> outcomes);

// L2 loss of both heads: mean squared control residual plus alpha times the
// mean squared treatment residual, each averaged over its own example count.
double joint_loss(std::span<const double> control_preds,
                  std::span<const double> control_targets,
                  std::span<const double> treatment_preds,
                  std::span<const double> treatment_targets, double alpha);

// Joint loss of a subset-example list against the current kernel, with the
// control/treatment terms weighted by 1/control_count and alpha/treatment_count.
double subset_joint_loss(const nn::KernelMlp& kernel, const data::Dataset& control_norm,
                         const data::Dataset& treatment_norm,
                         std::span<const SubsetExample> examples,
                         std::size_t control_count, std::size_t treatment_count,
                         double alpha);

// Same value, accumulating d(loss)/d(kernel params) into grad.
double subset_joint_loss_grad(const nn::KernelMlp& kernel,
                              const data::Dataset& control_norm,
                              const data::Dataset& treatment_norm,
                              std::span<const SubsetExample> examples,
                              std::size_t control_count, std::size_t treatment_count,
                              double alpha, std::span<double> grad);

TnwTrainResult train_tnw(const data::Dataset& control, const data::Dataset& treatment,
                         const TnwConfig& config);

// Attention over the full stored group set, denormalized to outcome scale.
double predict_response(const TnwModel& model, data::Group g,
                        std::span<const double> query);

// predict_response(treatment) - predict_response(control) at the same query.
double estimate_cate(const TnwModel& model, std::span<const double> query);

void save_tnw_bundle(const TnwModel& model, const std::filesystem::path& dir);
TnwModel load_tnw_bundle(const std::filesystem::path& dir);

} // namespace tnw::model
