#pragma once
// Experiment runner: per-replication data generation, validation grid
// search, model fitting, and CATE/response MSE evaluation against the truth
// oracle. RNG streams derive from (base_seed, axis index, replication,
// model), so cells are independent and adding a model never changes another
// model's numbers.

#include "tnw/baselines/forest.hpp"
#include "tnw/baselines/meta.hpp"
#include "tnw/data/generators.hpp"
#include "tnw/model/tnw.hpp"

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace tnw::bench {

enum class ModelId { TNW, T_RF, S_RF, X_RF, T_NW, S_NW, X_NW };

std::string model_name(ModelId id);
ModelId model_from_name(std::string_view name);
const std::vector<ModelId>& all_models();

// Loss coefficient used when the experiment does not pin one: 0.1 for the
// spiral family, 0.5 elsewhere.
double default_alpha(data::Family family);

struct ExperimentSpec {
    data::Family family = data::Family::Spiral;
    std::size_t c = 200;
    double ratio = 0.1;
    std::vector<ModelId> models = all_models();
    model::TnwConfig tnw;
    std::size_t replications = 10;
    std::uint64_t base_seed = 1;
    double noise_std = 0.0;
    std::size_t d = 10;
    double val_fraction = 0.2;
    std::size_t test_points = 1000;
    std::optional<double> alpha_override; // unset: family default

    void validate() const;
};

enum class SweepAxis { Controls, Ratio, Alpha };

std::string axis_name(SweepAxis axis);
SweepAxis axis_from_name(std::string_view name);

struct SweepSpec {
    SweepAxis axis = SweepAxis::Controls;
    std::vector<double> values; // non-empty, strictly increasing
    ExperimentSpec base;

    void validate() const;
};

struct ResultRow {
    ModelId model = ModelId::TNW;
    SweepAxis axis = SweepAxis::Controls;
    double axis_value = 0.0;
    std::size_t replication = 0;
    double cate_mse = 0.0;
    double control_mse = 0.0;
    double treatment_mse = 0.0;
    double seconds = 0.0;
    bool failed = false;
    std::string error;
};

struct CellSummary {
    ModelId model = ModelId::TNW;
    SweepAxis axis = SweepAxis::Controls;
    double axis_value = 0.0;
    std::size_t replications = 0; // successful ones
    double cate_mse_mean = 0.0;
    double cate_mse_std = 0.0;
    double control_mse_mean = 0.0;
    double treatment_mse_mean = 0.0;
};

// ---------------------------------------------------------------------------
// Hyperparameter grids (fixed sets; searched exhaustively, ties keep the
// earlier entry)

struct ForestGrid {
    std::vector<std::size_t> trees;
    std::vector<std::size_t> depths;
    std::vector<baselines::MinLeaf> leaves;

    std::size_t size() const { return trees.size() * depths.size() * leaves.size(); }
};

const ForestGrid& forest_grid();
const std::vector<double>& bandwidth_grid();

struct ForestChoice {
    std::size_t n_trees = 0;
    std::size_t max_depth = 0;
    baselines::MinLeaf min_leaf;
    double val_mse = 0.0;
};

struct BandwidthChoice {
    double gamma = 0.0;
    double val_mse = 0.0;
};

// Selection criterion: control-response MSE on validation controls plus
// treatment-response MSE on validation treatments, in outcome scale.
ForestChoice grid_search_forest(ModelId model, const data::Dataset& train,
                                const data::Dataset& validation, std::uint64_t seed);
BandwidthChoice grid_search_bandwidth(ModelId model, const data::Dataset& train,
                                      const data::Dataset& validation);

// ---------------------------------------------------------------------------
// Fitted models under one evaluation surface

class CateModel {
public:
    virtual ~CateModel() = default;
    virtual ModelId id() const = 0;
    virtual double predict_g0(std::span<const double> query) const = 0;
    virtual double predict_g1(std::span<const double> query) const = 0;
    virtual double predict_cate(std::span<const double> query) const = 0;
    virtual void save(const std::filesystem::path& dir) const = 0;
};

std::unique_ptr<CateModel> fit_model(ModelId id, const data::Dataset& train,
                                     const data::Dataset& validation,
                                     const ExperimentSpec& spec, std::uint64_t model_seed);

void save_model_bundle(const CateModel& model, const data::GeneratorSpec& gspec,
                       const std::filesystem::path& dir);

struct LoadedBundle {
    std::unique_ptr<CateModel> model;
    data::GeneratorSpec generator;
};

LoadedBundle load_model_bundle(const std::filesystem::path& dir);

struct EvalResult {
    double cate_mse = 0.0;
    double control_mse = 0.0;
    double treatment_mse = 0.0;
    // per-point predictions, for direct MSE re-computation
    std::vector<double> cate_pred;
    std::vector<double> g0_pred;
    std::vector<double> g1_pred;
};

EvalResult evaluate_model(const CateModel& model, const data::TestSet& test);

// ---------------------------------------------------------------------------
// Replications and sweeps

std::uint64_t cell_seed(std::uint64_t base_seed, std::size_t axis_index,
                        std::size_t replication);
std::uint64_t model_stream_seed(std::uint64_t cell, ModelId model);

// Generator spec of one replication cell (family parameters included).
data::GeneratorSpec replication_generator_spec(const ExperimentSpec& spec,
                                               std::uint64_t cell);

// One replication of every model in the spec. A failing model yields a row
// marked failed; the rest proceed.
std::vector<ResultRow> run_replication(const ExperimentSpec& spec, std::size_t replication,
                                       std::size_t axis_index = 0,
                                       std::optional<double> axis_value = std::nullopt,
                                       SweepAxis axis = SweepAxis::Controls);

struct SweepResult {
    SweepSpec spec;
    std::vector<ResultRow> rows;         // ordered by (axis value, model, replication)
    std::vector<CellSummary> summaries;  // ordered by (axis value, model)
};

SweepResult sweep(const SweepSpec& spec);

// header: model,axis,value,replication,cate_mse,control_mse,treatment_mse,seconds
void write_results_csv(const std::vector<ResultRow>& rows, std::ostream& out);
void write_summary_csv(const SweepResult& result, std::ostream& out);

// ---------------------------------------------------------------------------
// Config file parsing (JSON; see README for the schema)

ExperimentSpec experiment_from_json(const nlohmann::json& j);
SweepSpec sweep_from_json(const nlohmann::json& j);
SweepSpec load_sweep_config(const std::filesystem::path& path);

} // namespace tnw::bench
