#include "tnw/bench/harness.hpp"

#include "tnw/baselines/gaussian_nw.hpp"
#include "tnw/numio.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace tnw::bench {

namespace {

using baselines::Forest;
using baselines::ForestConfig;
using baselines::GaussianNw;
using baselines::SLearner;
using baselines::TLearner;
using baselines::XLearner;

double response_mse(const std::vector<double>& pred, const std::vector<double>& truth) {
    double acc = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double r = pred[i] - truth[i];
        acc += r * r;
    }
    return acc / static_cast<double>(pred.size());
}

} // namespace

std::string model_name(ModelId id) {
    switch (id) {
    case ModelId::TNW: return "TNW";
    case ModelId::T_RF: return "T-RF";
    case ModelId::S_RF: return "S-RF";
    case ModelId::X_RF: return "X-RF";
    case ModelId::T_NW: return "T-NW";
    case ModelId::S_NW: return "S-NW";
    case ModelId::X_NW: return "X-NW";
    }
    throw std::logic_error("bad model id");
}

ModelId model_from_name(std::string_view name) {
    for (ModelId id : all_models())
        if (model_name(id) == name)
            return id;
    throw std::invalid_argument("unknown model '" + std::string(name) + "'");
}

const std::vector<ModelId>& all_models() {
    static const std::vector<ModelId> models{ModelId::TNW,  ModelId::T_RF, ModelId::S_RF,
                                             ModelId::X_RF, ModelId::T_NW, ModelId::S_NW,
                                             ModelId::X_NW};
    return models;
}

double default_alpha(data::Family family) {
    return family == data::Family::Spiral ? 0.1 : 0.5;
}

void ExperimentSpec::validate() const {
    if (replications < 1)
        throw std::invalid_argument("ExperimentSpec: replications must be at least 1");
    if (!(ratio > 0.0 && ratio <= 1.0))
        throw std::invalid_argument("ExperimentSpec: ratio must lie in (0, 1]");
    if (models.empty())
        throw std::invalid_argument("ExperimentSpec: no models selected");
    if (alpha_override && *alpha_override < 0.0)
        throw std::invalid_argument("ExperimentSpec: alpha must be non-negative");
}

std::string axis_name(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::Controls: return "controls";
    case SweepAxis::Ratio: return "ratio";
    case SweepAxis::Alpha: return "alpha";
    }
    throw std::logic_error("bad axis");
}

SweepAxis axis_from_name(std::string_view name) {
    if (name == "controls") return SweepAxis::Controls;
    if (name == "ratio") return SweepAxis::Ratio;
    if (name == "alpha") return SweepAxis::Alpha;
    throw std::invalid_argument("unknown sweep axis '" + std::string(name) + "'");
}

void SweepSpec::validate() const {
    base.validate();
    if (values.empty())
        throw std::invalid_argument("SweepSpec: values must be non-empty");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i - 1] < values[i]))
            throw std::invalid_argument("SweepSpec: values must be strictly increasing");
    for (double v : values) {
        if (axis == SweepAxis::Controls && v < 10.0)
            throw std::invalid_argument("SweepSpec: controls axis needs values >= 10");
        if (axis == SweepAxis::Ratio && !(v > 0.0 && v <= 1.0))
            throw std::invalid_argument("SweepSpec: ratio axis needs values in (0, 1]");
        if (axis == SweepAxis::Alpha && v < 0.0)
            throw std::invalid_argument("SweepSpec: alpha axis needs non-negative values");
    }
}

// ---------------------------------------------------------------------------
// Grids

const ForestGrid& forest_grid() {
    static const ForestGrid grid{
        {10, 50, 100, 300},
        {2, 3, 4, 5, 6, 7},
        {{1.0, false}, {0.05, true}, {0.10, true}, {0.20, true}},
    };
    return grid;
}

const std::vector<double>& bandwidth_grid() {
    static const std::vector<double> grid = [] {
        std::vector<double> g;
        for (int i = -8; i <= 10; ++i)
            g.push_back(std::pow(10.0, i));
        for (double extra : {0.5, 5.0, 50.0, 100.0, 200.0, 500.0, 700.0})
            g.push_back(extra);
        return g;
    }();
    return grid;
}

namespace {

bool is_s_learner(ModelId id) { return id == ModelId::S_RF || id == ModelId::S_NW; }

template <class Learner>
double summed_group_mse(const Learner& learner, const data::Dataset& val_control,
                        const data::Dataset& val_treatment) {
    double mse_c = 0.0;
    for (std::size_t i = 0; i < val_control.count(); ++i) {
        const double r =
            learner.predict_g0(val_control.features.row(i)) - val_control.outcomes[i];
        mse_c += r * r;
    }
    double mse_t = 0.0;
    for (std::size_t i = 0; i < val_treatment.count(); ++i) {
        const double r =
            learner.predict_g1(val_treatment.features.row(i)) - val_treatment.outcomes[i];
        mse_t += r * r;
    }
    return mse_c / static_cast<double>(val_control.count()) +
           mse_t / static_cast<double>(val_treatment.count());
}

// Validation criterion for one candidate base regressor: response MSE on the
// validation controls plus response MSE on the validation treatments.
double validation_criterion(ModelId model, const baselines::Regressor& proto,
                            const data::Dataset& train_control,
                            const data::Dataset& train_treatment,
                            const data::Dataset& val_control,
                            const data::Dataset& val_treatment) {
    if (is_s_learner(model)) {
        SLearner learner(proto.clone_unfitted());
        learner.fit(train_control, train_treatment);
        return summed_group_mse(learner, val_control, val_treatment);
    }
    // T and X share the response stage, so their criterion is identical.
    TLearner learner(proto.clone_unfitted());
    learner.fit(train_control, train_treatment);
    return summed_group_mse(learner, val_control, val_treatment);
}

} // namespace

ForestChoice grid_search_forest(ModelId model, const data::Dataset& train,
                                const data::Dataset& validation, std::uint64_t seed) {
    const ForestGrid& grid = forest_grid();
    if (grid.size() == 0)
        throw std::logic_error("grid_search_forest: empty grid");
    if (validation.count() == 0)
        throw std::invalid_argument("grid_search_forest: empty validation set");

    const data::Dataset train_c = train.rows_of(data::Group::Control);
    const data::Dataset train_t = train.rows_of(data::Group::Treatment);
    const data::Dataset val_c = validation.rows_of(data::Group::Control);
    const data::Dataset val_t = validation.rows_of(data::Group::Treatment);

    ForestChoice best;
    bool have = false;
    std::size_t combo = 0;
    for (std::size_t trees : grid.trees) {
        for (std::size_t depth : grid.depths) {
            for (const baselines::MinLeaf& leaf : grid.leaves) {
                ForestConfig cfg;
                cfg.n_trees = trees;
                cfg.max_depth = depth;
                cfg.min_leaf = leaf;
                cfg.seed = derive_seed(seed, {hash_tag("grid-combo"), combo});
                const Forest proto(cfg);
                const double mse =
                    validation_criterion(model, proto, train_c, train_t, val_c, val_t);
                if (!have || mse < best.val_mse) {
                    have = true;
                    best = {trees, depth, leaf, mse};
                }
                ++combo;
            }
        }
    }
    return best;
}

BandwidthChoice grid_search_bandwidth(ModelId model, const data::Dataset& train,
                                      const data::Dataset& validation) {
    if (validation.count() == 0)
        throw std::invalid_argument("grid_search_bandwidth: empty validation set");

    const data::Dataset train_c = train.rows_of(data::Group::Control);
    const data::Dataset train_t = train.rows_of(data::Group::Treatment);
    const data::Dataset val_c = validation.rows_of(data::Group::Control);
    const data::Dataset val_t = validation.rows_of(data::Group::Treatment);

    BandwidthChoice best;
    bool have = false;
    for (double gamma : bandwidth_grid()) {
        const GaussianNw proto(gamma);
        const double mse =
            validation_criterion(model, proto, train_c, train_t, val_c, val_t);
        if (!have || mse < best.val_mse) {
            have = true;
            best = {gamma, mse};
        }
    }
    return best;
}

// ---------------------------------------------------------------------------
// CateModel wrappers

namespace {

class TnwCateModel final : public CateModel {
public:
    explicit TnwCateModel(model::TnwModel m) : model_(std::move(m)) {}

    ModelId id() const override { return ModelId::TNW; }
    double predict_g0(std::span<const double> q) const override {
        return model::predict_response(model_, data::Group::Control, q);
    }
    double predict_g1(std::span<const double> q) const override {
        return model::predict_response(model_, data::Group::Treatment, q);
    }
    double predict_cate(std::span<const double> q) const override {
        return model::estimate_cate(model_, q);
    }
    void save(const std::filesystem::path& dir) const override {
        model::save_tnw_bundle(model_, dir / "tnw");
    }

private:
    model::TnwModel model_;
};

template <class Learner, ModelId Id>
class MetaCateModel final : public CateModel {
public:
    explicit MetaCateModel(Learner learner) : learner_(std::move(learner)) {}

    ModelId id() const override { return Id; }
    double predict_g0(std::span<const double> q) const override {
        return learner_.predict_g0(q);
    }
    double predict_g1(std::span<const double> q) const override {
        return learner_.predict_g1(q);
    }
    double predict_cate(std::span<const double> q) const override {
        return learner_.cate(q);
    }
    void save(const std::filesystem::path& dir) const override {
        std::ofstream out(dir / "model.json");
        if (!out)
            throw std::runtime_error("cannot write model.json in " + dir.string());
        out << learner_.to_json().dump(2) << '\n';
    }

private:
    Learner learner_;
};

using TRfModel = MetaCateModel<TLearner, ModelId::T_RF>;
using SRfModel = MetaCateModel<SLearner, ModelId::S_RF>;
using XRfModel = MetaCateModel<XLearner, ModelId::X_RF>;
using TNwModel = MetaCateModel<TLearner, ModelId::T_NW>;
using SNwModel = MetaCateModel<SLearner, ModelId::S_NW>;
using XNwModel = MetaCateModel<XLearner, ModelId::X_NW>;

std::unique_ptr<baselines::Regressor> make_base(ModelId id, const data::Dataset& train,
                                                const data::Dataset& validation,
                                                std::uint64_t model_seed) {
    switch (id) {
    case ModelId::T_RF:
    case ModelId::S_RF:
    case ModelId::X_RF: {
        const ForestChoice choice = grid_search_forest(
            id, train, validation, derive_seed(model_seed, {hash_tag("grid")}));
        ForestConfig cfg;
        cfg.n_trees = choice.n_trees;
        cfg.max_depth = choice.max_depth;
        cfg.min_leaf = choice.min_leaf;
        cfg.seed = derive_seed(model_seed, {hash_tag("fit")});
        return std::make_unique<Forest>(cfg);
    }
    case ModelId::T_NW:
    case ModelId::S_NW:
    case ModelId::X_NW: {
        const BandwidthChoice choice = grid_search_bandwidth(id, train, validation);
        return std::make_unique<GaussianNw>(choice.gamma);
    }
    default:
        throw std::logic_error("make_base: not a baseline model");
    }
}

} // namespace

std::unique_ptr<CateModel> fit_model(ModelId id, const data::Dataset& train,
                                     const data::Dataset& validation,
                                     const ExperimentSpec& spec, std::uint64_t model_seed) {
    const data::Dataset control = train.rows_of(data::Group::Control);
    const data::Dataset treatment = train.rows_of(data::Group::Treatment);

    if (id == ModelId::TNW) {
        model::TnwConfig cfg = spec.tnw;
        cfg.alpha = spec.alpha_override.value_or(default_alpha(spec.family));
        cfg.seed = model_seed;
        cfg = cfg.resolved_for(control.count(), treatment.count());
        return std::make_unique<TnwCateModel>(
            model::train_tnw(control, treatment, cfg).model);
    }

    std::unique_ptr<baselines::Regressor> base =
        make_base(id, train, validation, model_seed);
    switch (id) {
    case ModelId::T_RF: {
        TLearner l(std::move(base));
        l.fit(control, treatment);
        return std::make_unique<TRfModel>(std::move(l));
    }
    case ModelId::S_RF: {
        SLearner l(std::move(base));
        l.fit(control, treatment);
        return std::make_unique<SRfModel>(std::move(l));
    }
    case ModelId::X_RF: {
        XLearner l(std::move(base));
        l.fit(control, treatment);
        return std::make_unique<XRfModel>(std::move(l));
    }
    case ModelId::T_NW: {
        TLearner l(std::move(base));
        l.fit(control, treatment);
        return std::make_unique<TNwModel>(std::move(l));
    }
    case ModelId::S_NW: {
        SLearner l(std::move(base));
        l.fit(control, treatment);
        return std::make_unique<SNwModel>(std::move(l));
    }
    case ModelId::X_NW: {
        XLearner l(std::move(base));
        l.fit(control, treatment);
        return std::make_unique<XNwModel>(std::move(l));
    }
    default:
        throw std::logic_error("fit_model: unhandled model");
    }
}

void save_model_bundle(const CateModel& model, const data::GeneratorSpec& gspec,
                       const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    model.save(dir);
    nlohmann::json manifest;
    manifest["format"] = "cate-model-bundle v1";
    manifest["model"] = model_name(model.id());
    manifest["generator"] = data::spec_to_json(gspec);
    std::ofstream out(dir / "bundle.json");
    if (!out)
        throw std::runtime_error("cannot write bundle.json in " + dir.string());
    out << manifest.dump(2) << '\n';
}

LoadedBundle load_model_bundle(const std::filesystem::path& dir) {
    std::ifstream in(dir / "bundle.json");
    if (!in)
        throw std::runtime_error("cannot open bundle.json in " + dir.string());
    nlohmann::json manifest;
    in >> manifest;
    if (manifest.at("format").get<std::string>() != "cate-model-bundle v1")
        throw std::runtime_error("unknown bundle format in " + dir.string());

    LoadedBundle bundle;
    bundle.generator = data::spec_from_json(manifest.at("generator"));
    const ModelId id = model_from_name(manifest.at("model").get<std::string>());
    if (id == ModelId::TNW) {
        bundle.model =
            std::make_unique<TnwCateModel>(model::load_tnw_bundle(dir / "tnw"));
        return bundle;
    }

    std::ifstream min(dir / "model.json");
    if (!min)
        throw std::runtime_error("cannot open model.json in " + dir.string());
    nlohmann::json mj;
    min >> mj;
    switch (id) {
    case ModelId::T_RF:
        bundle.model = std::make_unique<TRfModel>(TLearner::from_json(mj));
        break;
    case ModelId::S_RF:
        bundle.model = std::make_unique<SRfModel>(SLearner::from_json(mj));
        break;
    case ModelId::X_RF:
        bundle.model = std::make_unique<XRfModel>(XLearner::from_json(mj));
        break;
    case ModelId::T_NW:
        bundle.model = std::make_unique<TNwModel>(TLearner::from_json(mj));
        break;
    case ModelId::S_NW:
        bundle.model = std::make_unique<SNwModel>(SLearner::from_json(mj));
        break;
    case ModelId::X_NW:
        bundle.model = std::make_unique<XNwModel>(XLearner::from_json(mj));
        break;
    default:
        throw std::logic_error("load_model_bundle: unhandled model");
    }
    return bundle;
}

EvalResult evaluate_model(const CateModel& model, const data::TestSet& test) {
    EvalResult r;
    const std::size_t n = test.count();
    r.cate_pred.resize(n);
    r.g0_pred.resize(n);
    r.g1_pred.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto x = test.features.row(i);
        r.g0_pred[i] = model.predict_g0(x);
        r.g1_pred[i] = model.predict_g1(x);
        r.cate_pred[i] = model.predict_cate(x);
    }
    r.cate_mse = response_mse(r.cate_pred, test.true_cate);
    r.control_mse = response_mse(r.g0_pred, test.true_g0);
    r.treatment_mse = response_mse(r.g1_pred, test.true_g1);
    return r;
}

// ---------------------------------------------------------------------------
// Replications and sweeps

std::uint64_t cell_seed(std::uint64_t base_seed, std::size_t axis_index,
                        std::size_t replication) {
    return derive_seed(base_seed, {hash_tag("cell"), axis_index, replication});
}

std::uint64_t model_stream_seed(std::uint64_t cell, ModelId model) {
    return derive_seed(cell, {hash_tag("model"), hash_tag(model_name(model))});
}

data::GeneratorSpec replication_generator_spec(const ExperimentSpec& spec,
                                               std::uint64_t cell) {
    return data::sample_generator_spec(spec.family, spec.d, spec.noise_std,
                                       derive_seed(cell, {hash_tag("data")}));
}

std::vector<ResultRow> run_replication(const ExperimentSpec& spec, std::size_t replication,
                                       std::size_t axis_index,
                                       std::optional<double> axis_value, SweepAxis axis) {
    spec.validate();
    const std::uint64_t cell = cell_seed(spec.base_seed, axis_index, replication);
    const data::GeneratorSpec gspec = replication_generator_spec(spec, cell);
    const data::Split split =
        data::make_split(gspec, spec.c, spec.ratio, spec.val_fraction, spec.test_points);

    const double value = axis_value.value_or(static_cast<double>(spec.c));

    std::vector<ResultRow> rows;
    rows.reserve(spec.models.size());
    for (ModelId id : spec.models) {
        ResultRow row;
        row.model = id;
        row.axis = axis;
        row.axis_value = value;
        row.replication = replication;
        const auto started = std::chrono::steady_clock::now();
        try {
            const std::unique_ptr<CateModel> model = fit_model(
                id, split.train, split.validation, spec, model_stream_seed(cell, id));
            const EvalResult eval = evaluate_model(*model, split.test);
            row.cate_mse = eval.cate_mse;
            row.control_mse = eval.control_mse;
            row.treatment_mse = eval.treatment_mse;
        } catch (const std::exception& e) {
            row.failed = true;
            row.error = e.what();
        }
        row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                    started)
                          .count();
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

ExperimentSpec apply_axis(const ExperimentSpec& base, SweepAxis axis, double value) {
    ExperimentSpec spec = base;
    switch (axis) {
    case SweepAxis::Controls:
        spec.c = static_cast<std::size_t>(std::llround(value));
        break;
    case SweepAxis::Ratio:
        spec.ratio = value;
        break;
    case SweepAxis::Alpha:
        spec.alpha_override = value;
        break;
    }
    return spec;
}

CellSummary summarize_cell(SweepAxis axis, double value, ModelId model,
                           const std::vector<ResultRow>& rows) {
    CellSummary s;
    s.model = model;
    s.axis = axis;
    s.axis_value = value;
    std::vector<double> cate;
    double control_sum = 0.0;
    double treatment_sum = 0.0;
    for (const ResultRow& r : rows) {
        if (r.model != model || r.axis_value != value || r.failed)
            continue;
        cate.push_back(r.cate_mse);
        control_sum += r.control_mse;
        treatment_sum += r.treatment_mse;
    }
    s.replications = cate.size();
    if (cate.empty()) {
        s.cate_mse_mean = s.cate_mse_std = std::numeric_limits<double>::quiet_NaN();
        s.control_mse_mean = s.treatment_mse_mean =
            std::numeric_limits<double>::quiet_NaN();
        return s;
    }
    double mean = 0.0;
    for (double v : cate)
        mean += v;
    mean /= static_cast<double>(cate.size());
    double var = 0.0;
    for (double v : cate)
        var += (v - mean) * (v - mean);
    var /= static_cast<double>(cate.size()); // population convention
    s.cate_mse_mean = mean;
    s.cate_mse_std = std::sqrt(var);
    s.control_mse_mean = control_sum / static_cast<double>(cate.size());
    s.treatment_mse_mean = treatment_sum / static_cast<double>(cate.size());
    return s;
}

} // namespace

SweepResult sweep(const SweepSpec& spec) {
    spec.validate();
    SweepResult result;
    result.spec = spec;
    for (std::size_t vi = 0; vi < spec.values.size(); ++vi) {
        const double value = spec.values[vi];
        const ExperimentSpec cell_spec = apply_axis(spec.base, spec.axis, value);
        for (std::size_t rep = 0; rep < cell_spec.replications; ++rep) {
            std::vector<ResultRow> rows =
                run_replication(cell_spec, rep, vi, value, spec.axis);
            result.rows.insert(result.rows.end(), std::make_move_iterator(rows.begin()),
                               std::make_move_iterator(rows.end()));
        }
    }
    // rows per replication come out model-major; order by (value, model, rep)
    std::stable_sort(result.rows.begin(), result.rows.end(),
                     [](const ResultRow& a, const ResultRow& b) {
                         if (a.axis_value != b.axis_value)
                             return a.axis_value < b.axis_value;
                         if (a.model != b.model)
                             return static_cast<int>(a.model) < static_cast<int>(b.model);
                         return a.replication < b.replication;
                     });
    for (double value : spec.values)
        for (ModelId id : spec.base.models)
            result.summaries.push_back(summarize_cell(spec.axis, value, id, result.rows));
    return result;
}

void write_results_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
    out << "model,axis,value,replication,cate_mse,control_mse,treatment_mse,seconds\n";
    for (const ResultRow& r : rows) {
        out << model_name(r.model) << ',' << axis_name(r.axis) << ','
            << format_double(r.axis_value) << ',' << r.replication << ',';
        if (r.failed)
            out << "nan,nan,nan";
        else
            out << format_double(r.cate_mse) << ',' << format_double(r.control_mse) << ','
                << format_double(r.treatment_mse);
        out << ',' << format_double(r.seconds) << '\n';
    }
}

void write_summary_csv(const SweepResult& result, std::ostream& out) {
    out << "family,axis,value,model,replications,cate_mse_mean,cate_mse_std,"
           "control_mse_mean,treatment_mse_mean\n";
    for (const CellSummary& s : result.summaries) {
        out << data::family_name(result.spec.base.family) << ',' << axis_name(s.axis)
            << ',' << format_double(s.axis_value) << ',' << model_name(s.model) << ','
            << s.replications << ',' << format_double(s.cate_mse_mean) << ','
            << format_double(s.cate_mse_std) << ',' << format_double(s.control_mse_mean)
            << ',' << format_double(s.treatment_mse_mean) << '\n';
    }
}

// ---------------------------------------------------------------------------
// Config parsing

ExperimentSpec experiment_from_json(const nlohmann::json& j) {
    ExperimentSpec spec;
    if (j.contains("family"))
        spec.family = data::family_from_name(j.at("family").get<std::string>());
    spec.c = j.value("controls", spec.c);
    spec.ratio = j.value("ratio", spec.ratio);
    spec.noise_std = j.value("noise_std", spec.noise_std);
    spec.d = j.value("d", spec.d);
    spec.replications = j.value("replications", spec.replications);
    spec.base_seed = j.value("base_seed", spec.base_seed);
    spec.val_fraction = j.value("val_fraction", spec.val_fraction);
    spec.test_points = j.value("test_points", spec.test_points);
    if (j.contains("alpha") && !j.at("alpha").is_null())
        spec.alpha_override = j.at("alpha").get<double>();
    if (j.contains("models")) {
        spec.models.clear();
        for (const auto& m : j.at("models"))
            spec.models.push_back(model_from_name(m.get<std::string>()));
    }
    if (j.contains("tnw")) {
        const nlohmann::json& t = j.at("tnw");
        model::TnwConfig& cfg = spec.tnw;
        cfg.n = t.value("n", cfg.n);
        cfg.m = t.value("m", cfg.m);
        cfg.subsets_per_control = t.value("subsets_per_control", cfg.subsets_per_control);
        cfg.subsets_per_treatment =
            t.value("subsets_per_treatment", cfg.subsets_per_treatment);
        cfg.epochs = t.value("epochs", cfg.epochs);
        cfg.batch_size = t.value("batch_size", cfg.batch_size);
        if (t.contains("hidden"))
            cfg.hidden = t.at("hidden").get<std::vector<std::size_t>>();
        cfg.optimizer.step_size = t.value("learning_rate", cfg.optimizer.step_size);
        cfg.resample_each_epoch = t.value("resample_each_epoch", cfg.resample_each_epoch);
    }
    spec.validate();
    return spec;
}

SweepSpec sweep_from_json(const nlohmann::json& j) {
    SweepSpec spec;
    spec.base = experiment_from_json(j);
    if (j.contains("sweep")) {
        const nlohmann::json& s = j.at("sweep");
        spec.axis = axis_from_name(s.at("axis").get<std::string>());
        spec.values = s.at("values").get<std::vector<double>>();
    } else {
        spec.axis = SweepAxis::Controls;
        spec.values = {static_cast<double>(spec.base.c)};
    }
    spec.validate();
    return spec;
}

SweepSpec load_sweep_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config: " + path.string());
    nlohmann::json j;
    in >> j;
    return sweep_from_json(j);
}

} // namespace tnw::bench
