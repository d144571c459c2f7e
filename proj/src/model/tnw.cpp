#include "tnw/model/tnw.hpp"

#include "tnw/data/io.hpp"
#include "tnw/nn/checkpoint.hpp"
#include "tnw/simd/ops.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace tnw::model {

namespace {

void softmax_inplace(std::vector<double>& scores) {
    double m = scores[0];
    for (double s : scores) {
        if (!std::isfinite(s))
            throw std::runtime_error("attention: non-finite kernel score");
        m = std::max(m, s);
    }
    double total = 0.0;
    for (double& s : scores) {
        s = std::exp(s - m);
        total += s;
    }
    for (double& s : scores)
        s /= total;
}

// Scratch shared across examples; buffers are reused, never shrunk.
struct PairWork {
    std::vector<double> pair;
    std::vector<double> scores;
    std::vector<nn::ForwardCache> caches;
};

const data::Dataset& group_set(const data::Dataset& control, const data::Dataset& treatment,
                               data::Group g) {
    return g == data::Group::Control ? control : treatment;
}

// Attention prediction for one subset example. Caches are kept per neighbor
// when a backward pass will follow.
double example_prediction(const nn::KernelMlp& net, const data::Dataset& ds,
                          const SubsetExample& ex, PairWork& w, bool keep_caches) {
    const std::size_t d = ds.dim();
    const std::size_t k = ex.neighbors.size();
    w.pair.resize(2 * d);
    w.scores.resize(k);
    w.caches.resize(std::max(w.caches.size(), keep_caches ? k : 1));

    const auto query = ds.features.row(ex.target);
    std::copy(query.begin(), query.end(), w.pair.begin());
    for (std::size_t j = 0; j < k; ++j) {
        const auto key = ds.features.row(ex.neighbors[j]);
        std::copy(key.begin(), key.end(), w.pair.begin() + d);
        w.scores[j] = net.forward(w.pair, w.caches[keep_caches ? j : 0]);
    }
    softmax_inplace(w.scores);
    double pred = 0.0;
    for (std::size_t j = 0; j < k; ++j)
        pred += w.scores[j] * ds.outcomes[ex.neighbors[j]];
    return pred;
}

double accumulate_examples(const nn::KernelMlp& net, const data::Dataset& control_norm,
                           const data::Dataset& treatment_norm,
                           std::span<const SubsetExample> examples, double control_coef,
                           double treatment_coef, double grad_scale,
                           std::span<double> grad, PairWork& w) {
    double loss = 0.0;
    const bool with_grad = !grad.empty();
    for (const SubsetExample& ex : examples) {
        const data::Dataset& ds = group_set(control_norm, treatment_norm, ex.group);
        const double coef =
            ex.group == data::Group::Control ? control_coef : treatment_coef;
        if (coef == 0.0)
            continue;
        const double pred = example_prediction(net, ds, ex, w, with_grad);
        const double residual = pred - ds.outcomes[ex.target];
        loss += coef * residual * residual;
        if (with_grad) {
            const double dpred = grad_scale * coef * 2.0 * residual;
            for (std::size_t j = 0; j < ex.neighbors.size(); ++j) {
                const double upstream =
                    dpred * w.scores[j] * (ds.outcomes[ex.neighbors[j]] - pred);
                net.backward(w.caches[j], upstream, grad);
            }
        }
    }
    return loss;
}

} // namespace

TnwConfig TnwConfig::resolved_for(std::size_t c, std::size_t t) const {
    TnwConfig r = *this;
    if (c >= 2)
        r.n = std::clamp<std::size_t>(n, 1, c - 1);
    if (r.m == 0)
        r.m = t / 2;
    if (t >= 2)
        r.m = std::clamp<std::size_t>(r.m, 1, t - 1);
    return r;
}

std::vector<double> attention_weights(const nn::KernelMlp& kernel,
                                      std::span<const double> target,
                                      const Matrix& neighbors) {
    if (neighbors.rows() == 0)
        throw std::invalid_argument("attention_weights: need at least one neighbor");
    if (neighbors.cols() != target.size())
        throw std::invalid_argument("attention_weights: neighbor dimension mismatch");
    if (kernel.input_dim() != 2 * target.size())
        throw std::invalid_argument("attention_weights: kernel expects input of length " +
                                    std::to_string(kernel.input_dim()) + ", pairs have " +
                                    std::to_string(2 * target.size()));

    const std::size_t d = target.size();
    std::vector<double> pair(2 * d);
    std::copy(target.begin(), target.end(), pair.begin());
    std::vector<double> scores(neighbors.rows());
    nn::ForwardCache cache;
    for (std::size_t j = 0; j < neighbors.rows(); ++j) {
        const auto key = neighbors.row(j);
        std::copy(key.begin(), key.end(), pair.begin() + d);
        scores[j] = kernel.forward(pair, cache);
    }
    softmax_inplace(scores);
    return scores;
}

double nw_head(std::span<const double> weights, std::span<const double> outcomes) {
    if (weights.size() != outcomes.size())
        throw std::invalid_argument("nw_head: " + std::to_string(weights.size()) +
                                    " weights vs " + std::to_string(outcomes.size()) +
                                    " outcomes");
    if (weights.empty())
        throw std::invalid_argument("nw_head: empty inputs");
    return simd::dot(weights.data(), outcomes.data(), weights.size());
}

double joint_loss(std::span<const double> control_preds,
                  std::span<const double> control_targets,
                  std::span<const double> treatment_preds,
                  std::span<const double> treatment_targets, double alpha) {
    if (alpha < 0.0)
        throw std::invalid_argument("joint_loss: alpha must be non-negative");
    if (control_preds.size() != control_targets.size() ||
        treatment_preds.size() != treatment_targets.size())
        throw std::invalid_argument("joint_loss: prediction/target lengths disagree");
    if (control_preds.empty())
        throw std::invalid_argument("joint_loss: empty control set");
    if (treatment_preds.empty() && alpha != 0.0)
        throw std::invalid_argument("joint_loss: empty treatment set with alpha != 0");

    double control_term = 0.0;
    for (std::size_t i = 0; i < control_preds.size(); ++i) {
        const double r = control_preds[i] - control_targets[i];
        control_term += r * r;
    }
    control_term /= static_cast<double>(control_preds.size());

    double treatment_term = 0.0;
    if (!treatment_preds.empty()) {
        for (std::size_t i = 0; i < treatment_preds.size(); ++i) {
            const double r = treatment_preds[i] - treatment_targets[i];
            treatment_term += r * r;
        }
        treatment_term /= static_cast<double>(treatment_preds.size());
    }
    return control_term + alpha * treatment_term;
}

double subset_joint_loss(const nn::KernelMlp& kernel, const data::Dataset& control_norm,
                         const data::Dataset& treatment_norm,
                         std::span<const SubsetExample> examples,
                         std::size_t control_count, std::size_t treatment_count,
                         double alpha) {
    PairWork w;
    const double ccoef = 1.0 / static_cast<double>(control_count);
    const double tcoef =
        treatment_count == 0 ? 0.0 : alpha / static_cast<double>(treatment_count);
    return accumulate_examples(kernel, control_norm, treatment_norm, examples, ccoef,
                               tcoef, 1.0, {}, w);
}

double subset_joint_loss_grad(const nn::KernelMlp& kernel,
                              const data::Dataset& control_norm,
                              const data::Dataset& treatment_norm,
                              std::span<const SubsetExample> examples,
                              std::size_t control_count, std::size_t treatment_count,
                              double alpha, std::span<double> grad) {
    PairWork w;
    const double ccoef = 1.0 / static_cast<double>(control_count);
    const double tcoef =
        treatment_count == 0 ? 0.0 : alpha / static_cast<double>(treatment_count);
    return accumulate_examples(kernel, control_norm, treatment_norm, examples, ccoef,
                               tcoef, 1.0, grad, w);
}

namespace {

void check_group_purity(const data::Dataset& ds, data::Group expected) {
    for (data::Group g : ds.group)
        if (g != expected)
            throw std::invalid_argument(std::string("train_tnw: ") +
                                        data::group_name(expected) +
                                        " set contains rows of the other group");
}

} // namespace

TnwTrainResult train_tnw(const data::Dataset& control, const data::Dataset& treatment,
                         const TnwConfig& config) {
    const std::size_t c = control.count();
    const std::size_t t = treatment.count();
    if (c < 2)
        throw std::invalid_argument("train_tnw: need at least 2 controls");
    check_group_purity(control, data::Group::Control);
    check_group_purity(treatment, data::Group::Treatment);
    if (control.dim() == 0 || (t > 0 && treatment.dim() != control.dim()))
        throw std::invalid_argument("train_tnw: feature dimensions disagree");
    if (config.alpha < 0.0)
        throw std::invalid_argument("train_tnw: alpha must be non-negative");
    if (config.n < 1 || config.n > c - 1)
        throw std::invalid_argument("train_tnw: n must lie in [1, c-1]");
    const bool use_treatment = config.alpha > 0.0;
    if (use_treatment) {
        if (t < 2)
            throw std::invalid_argument("train_tnw: alpha > 0 needs at least 2 treatments");
        if (config.m < 1 || config.m > t - 1)
            throw std::invalid_argument("train_tnw: m must lie in [1, t-1]");
    }
    if (config.subsets_per_control < 1 || config.subsets_per_treatment < 1)
        throw std::invalid_argument("train_tnw: N and M must be at least 1");
    if (config.batch_size < 1)
        throw std::invalid_argument("train_tnw: batch_size must be at least 1");

    TnwTrainResult result;
    TnwModel& model = result.model;

    // Per-group z-scores; the stats ride along for inference-time denormalization.
    model.control_stats = data::outcome_stats(control.outcomes, data::Group::Control);
    model.control_set = control;
    for (double& y : model.control_set.outcomes)
        y = data::normalize_value(y, model.control_stats);
    model.treatment_set = treatment;
    if (t > 0) {
        model.treatment_stats =
            data::outcome_stats(treatment.outcomes, data::Group::Treatment);
        for (double& y : model.treatment_set.outcomes)
            y = data::normalize_value(y, model.treatment_stats);
    } else {
        model.treatment_stats = {0.0, 1.0, data::Group::Treatment};
    }

    RngStream init_rng(derive_seed(config.seed, {hash_tag("kernel-init")}));
    model.kernel = nn::KernelMlp::create(2 * control.dim(), config.hidden, init_rng);

    RngStream control_sampler(derive_seed(config.seed, {hash_tag("subsets"), 0}));
    RngStream treatment_sampler(derive_seed(config.seed, {hash_tag("subsets"), 1}));
    RngStream shuffler(derive_seed(config.seed, {hash_tag("shuffle")}));

    auto draw_examples = [&]() {
        std::vector<SubsetExample> all = sample_subsets(
            c, config.subsets_per_control, config.n, data::Group::Control, control_sampler);
        if (use_treatment) {
            auto tx = sample_subsets(t, config.subsets_per_treatment, config.m,
                                     data::Group::Treatment, treatment_sampler);
            all.insert(all.end(), std::make_move_iterator(tx.begin()),
                       std::make_move_iterator(tx.end()));
        }
        return all;
    };

    std::vector<SubsetExample> examples = draw_examples();
    const std::size_t control_count = c * config.subsets_per_control;
    const std::size_t treatment_count =
        use_treatment ? t * config.subsets_per_treatment : 0;
    const double ccoef = 1.0 / static_cast<double>(control_count);
    const double tcoef = use_treatment
                             ? config.alpha / static_cast<double>(treatment_count)
                             : 0.0;
    const auto total = static_cast<double>(examples.size());

    nn::AdamState optimizer(model.kernel.param_count(), config.optimizer);
    std::vector<double> grad(model.kernel.param_count());
    std::vector<std::size_t> order(examples.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::vector<SubsetExample> batch;
    PairWork work;

    result.epoch_loss.reserve(config.epochs);
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        if (config.resample_each_epoch && epoch > 0)
            examples = draw_examples();
        // Fisher-Yates shuffle from the dedicated stream
        for (std::size_t i = order.size(); i > 1; --i)
            std::swap(order[i - 1], order[shuffler.below(i)]);

        double epoch_loss = 0.0;
        for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
            const std::size_t end = std::min(order.size(), start + config.batch_size);
            batch.clear();
            for (std::size_t i = start; i < end; ++i)
                batch.push_back(examples[order[i]]);
            std::fill(grad.begin(), grad.end(), 0.0);
            // Full-count coefficients with an |E|/|B| batch factor keep the
            // expected batch gradient equal to the full-loss gradient.
            const double grad_scale = total / static_cast<double>(batch.size());
            epoch_loss += accumulate_examples(model.kernel, model.control_set,
                                              model.treatment_set, batch, ccoef, tcoef,
                                              grad_scale, grad, work);
            optimizer.step(model.kernel.mutable_params(), grad);
        }
        result.epoch_loss.push_back(epoch_loss);
    }
    return result;
}

double predict_response(const TnwModel& model, data::Group g,
                        std::span<const double> query) {
    const data::Dataset& set = group_set(model.control_set, model.treatment_set, g);
    if (set.count() == 0)
        throw std::invalid_argument(std::string("predict_response: no stored ") +
                                    data::group_name(g) + " rows");
    const std::vector<double> w = attention_weights(model.kernel, query, set.features);
    const double pred = nw_head(w, set.outcomes);
    return data::denormalize_value(
        pred, g == data::Group::Control ? model.control_stats : model.treatment_stats);
}

double estimate_cate(const TnwModel& model, std::span<const double> query) {
    return predict_response(model, data::Group::Treatment, query) -
           predict_response(model, data::Group::Control, query);
}

void save_tnw_bundle(const TnwModel& model, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    nn::save_checkpoint(model.kernel, dir / "kernel.txt");
    data::write_dataset_csv(model.control_set, dir / "control.csv");
    data::write_dataset_csv(model.treatment_set, dir / "treatment.csv");
    nlohmann::json manifest;
    manifest["format"] = "tnw-model-bundle v1";
    manifest["control_stats"] = {{"mean", model.control_stats.mean},
                                 {"std", model.control_stats.std_dev}};
    manifest["treatment_stats"] = {{"mean", model.treatment_stats.mean},
                                   {"std", model.treatment_stats.std_dev}};
    manifest["files"] = {{"kernel", "kernel.txt"},
                         {"control", "control.csv"},
                         {"treatment", "treatment.csv"}};
    std::ofstream out(dir / "manifest.json");
    if (!out)
        throw std::runtime_error("cannot write bundle manifest in " + dir.string());
    out << manifest.dump(2) << '\n';
}

TnwModel load_tnw_bundle(const std::filesystem::path& dir) {
    std::ifstream in(dir / "manifest.json");
    if (!in)
        throw std::runtime_error("cannot open bundle manifest in " + dir.string());
    nlohmann::json manifest;
    in >> manifest;
    if (manifest.at("format").get<std::string>() != "tnw-model-bundle v1")
        throw std::runtime_error("unknown bundle format in " + dir.string());

    TnwModel model;
    model.kernel = nn::load_checkpoint(dir / "kernel.txt");
    model.control_set = data::read_dataset_csv(dir / "control.csv");
    model.treatment_set = data::read_dataset_csv(dir / "treatment.csv");
    model.control_stats = {manifest.at("control_stats").at("mean").get<double>(),
                           manifest.at("control_stats").at("std").get<double>(),
                           data::Group::Control};
    model.treatment_stats = {manifest.at("treatment_stats").at("mean").get<double>(),
                             manifest.at("treatment_stats").at("std").get<double>(),
                             data::Group::Treatment};
    return model;
}

} // namespace tnw::model
