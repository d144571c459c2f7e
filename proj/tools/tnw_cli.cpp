// Benchmark CLI: generate datasets, train and evaluate single models,
// run sweeps, render comparison tables.

#include "tnw/bench/harness.hpp"
#include "tnw/bench/table.hpp"
#include "tnw/data/io.hpp"
#include "tnw/numio.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

namespace fs = std::filesystem;
using namespace tnw;

namespace {

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            parts.push_back(item);
    return parts;
}

struct SweepOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> models;
    std::optional<std::string> family;
    std::optional<std::size_t> replications;

    void apply(bench::SweepSpec& spec) const {
        if (seed)
            spec.base.base_seed = *seed;
        if (family)
            spec.base.family = data::family_from_name(*family);
        if (replications)
            spec.base.replications = *replications;
        if (models) {
            spec.base.models.clear();
            for (const std::string& m : split_commas(*models))
                spec.base.models.push_back(bench::model_from_name(m));
        }
        spec.validate();
    }
};

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << content;
}

int cmd_generate(const std::string& family, std::size_t controls, std::size_t treatments,
                 std::size_t d, double noise, std::uint64_t seed, const fs::path& out) {
    const auto gspec =
        data::sample_generator_spec(data::family_from_name(family), d, noise, seed);
    data::Dataset ds = data::generate(gspec, controls, data::Group::Control);
    if (treatments > 0)
        ds.append(data::generate(gspec, treatments, data::Group::Treatment));
    data::write_dataset_csv(ds, out);
    fs::path sidecar = out;
    sidecar += ".spec.json";
    data::write_spec_sidecar(gspec, sidecar);
    std::cout << "wrote " << ds.count() << " rows to " << out.string() << " (sidecar "
              << sidecar.string() << ")\n";
    return 0;
}

int cmd_train(const fs::path& config, const std::string& model,
              std::optional<std::uint64_t> seed, std::size_t replication,
              const fs::path& out) {
    bench::SweepSpec sweep_spec = bench::load_sweep_config(config);
    bench::ExperimentSpec spec = sweep_spec.base;
    if (seed)
        spec.base_seed = *seed;
    const bench::ModelId id = bench::model_from_name(model);

    const std::uint64_t cell = bench::cell_seed(spec.base_seed, 0, replication);
    const data::GeneratorSpec gspec = bench::replication_generator_spec(spec, cell);
    const data::Split split =
        data::make_split(gspec, spec.c, spec.ratio, spec.val_fraction, spec.test_points);
    const auto fitted = bench::fit_model(id, split.train, split.validation, spec,
                                         bench::model_stream_seed(cell, id));
    bench::save_model_bundle(*fitted, gspec, out);
    std::cout << "trained " << model << " and wrote bundle to " << out.string() << "\n";
    return 0;
}

int cmd_evaluate(const fs::path& bundle_dir, std::uint64_t seed, std::size_t points,
                 const std::optional<fs::path>& out) {
    bench::LoadedBundle bundle = bench::load_model_bundle(bundle_dir);
    data::GeneratorSpec gspec = bundle.generator;
    gspec.seed = seed; // same family parameters, fresh test draws
    const data::TestSet test = data::make_test_set(gspec, points);
    const bench::EvalResult eval = bench::evaluate_model(*bundle.model, test);
    std::cout << "cate_mse " << format_double(eval.cate_mse) << "\n"
              << "control_mse " << format_double(eval.control_mse) << "\n"
              << "treatment_mse " << format_double(eval.treatment_mse) << "\n";
    if (out) {
        std::ofstream os(*out);
        if (!os)
            throw std::runtime_error("cannot write " + out->string());
        os << "index,true_cate,pred_cate,true_g0,pred_g0,true_g1,pred_g1\n";
        for (std::size_t i = 0; i < test.count(); ++i)
            os << i << ',' << format_double(test.true_cate[i]) << ','
               << format_double(eval.cate_pred[i]) << ',' << format_double(test.true_g0[i])
               << ',' << format_double(eval.g0_pred[i]) << ','
               << format_double(test.true_g1[i]) << ',' << format_double(eval.g1_pred[i])
               << '\n';
    }
    return 0;
}

int cmd_sweep(const fs::path& config, const fs::path& out_dir,
              const SweepOverrides& overrides) {
    bench::SweepSpec spec = bench::load_sweep_config(config);
    overrides.apply(spec);
    fs::create_directories(out_dir);

    const bench::SweepResult result = bench::sweep(spec);

    {
        std::ofstream os(out_dir / "results.csv");
        bench::write_results_csv(result.rows, os);
    }
    {
        std::ofstream os(out_dir / "summary.csv");
        bench::write_summary_csv(result, os);
    }
    bench::ComparisonTable table = bench::table_from_summaries(result);
    const std::string rendered = bench::render_table(table);
    write_file(out_dir / "table.txt", rendered);
    {
        std::ofstream os(out_dir / "table.csv");
        bench::write_table_csv(table, os);
    }
    std::cout << rendered;
    for (const bench::ResultRow& row : result.rows)
        if (row.failed)
            std::cerr << "warning: " << bench::model_name(row.model) << " at "
                      << bench::axis_name(row.axis) << "="
                      << format_double(row.axis_value) << " rep " << row.replication
                      << " failed: " << row.error << "\n";
    std::cout << "wrote results.csv, summary.csv, table.txt, table.csv to "
              << out_dir.string() << "\n";
    return 0;
}

// Rebuild summaries from a summary.csv written by `sweep`.
bench::SweepResult read_summary_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty summary file " + path.string());

    bench::SweepResult result;
    bool first = true;
    std::vector<bench::ModelId> models;
    std::vector<double> values;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::stringstream ss(line);
        std::string family, axis, value, model, reps, mean, sd, cmean, tmean;
        std::getline(ss, family, ',');
        std::getline(ss, axis, ',');
        std::getline(ss, value, ',');
        std::getline(ss, model, ',');
        std::getline(ss, reps, ',');
        std::getline(ss, mean, ',');
        std::getline(ss, sd, ',');
        std::getline(ss, cmean, ',');
        std::getline(ss, tmean, ',');

        if (first) {
            result.spec.base.family = data::family_from_name(family);
            result.spec.axis = bench::axis_from_name(axis);
            first = false;
        }
        bench::CellSummary s;
        s.model = bench::model_from_name(model);
        s.axis = bench::axis_from_name(axis);
        s.axis_value = parse_double(value);
        s.replications = static_cast<std::size_t>(std::stoull(reps));
        s.cate_mse_mean = parse_double(mean);
        s.cate_mse_std = parse_double(sd);
        s.control_mse_mean = parse_double(cmean);
        s.treatment_mse_mean = parse_double(tmean);
        result.summaries.push_back(s);
        if (std::find(models.begin(), models.end(), s.model) == models.end())
            models.push_back(s.model);
        if (std::find(values.begin(), values.end(), s.axis_value) == values.end())
            values.push_back(s.axis_value);
    }
    result.spec.base.models = models;
    result.spec.values = values;
    return result;
}

int cmd_table(const std::vector<fs::path>& inputs, const std::optional<fs::path>& out,
              const std::optional<fs::path>& csv_out, bool with_reference) {
    std::vector<bench::SweepResult> results;
    for (const fs::path& p : inputs)
        results.push_back(read_summary_csv(p));

    bench::ComparisonTable table;
    if (results.size() == 1 && results[0].spec.values.size() > 1)
        table = bench::table_from_summaries(results[0]);
    else
        table = bench::table_from_family_results(results);
    if (with_reference)
        bench::annotate_with_references(table);

    const std::string rendered = bench::render_table(table);
    std::cout << rendered;
    if (out)
        write_file(*out, rendered);
    if (csv_out) {
        std::ofstream os(*csv_out);
        if (!os)
            throw std::runtime_error("cannot write " + csv_out->string());
        bench::write_table_csv(table, os);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trainable Nadaraya-Watson CATE benchmark"};
    app.require_subcommand(1);

    // generate
    auto* generate = app.add_subcommand("generate", "emit a synthetic dataset");
    std::string g_family = "spiral";
    std::size_t g_controls = 200, g_treatments = 20, g_d = 10;
    double g_noise = 0.0;
    std::uint64_t g_seed = 1;
    fs::path g_out = "dataset.csv";
    generate->add_option("--family", g_family, "spiral|logarithmic|power|indicator");
    generate->add_option("--controls", g_controls, "control rows");
    generate->add_option("--treatments", g_treatments, "treatment rows");
    generate->add_option("--d", g_d, "feature dimension");
    generate->add_option("--noise", g_noise, "outcome noise std");
    generate->add_option("--seed", g_seed, "generator seed");
    generate->add_option("--out", g_out, "output csv path");

    // train
    auto* train = app.add_subcommand("train", "fit one model, write a model bundle");
    fs::path t_config;
    std::string t_model = "TNW";
    std::optional<std::uint64_t> t_seed;
    std::size_t t_replication = 0;
    fs::path t_out = "bundle";
    train->add_option("--config", t_config, "experiment config (json)")->required();
    train->add_option("--model", t_model, "model id (TNW, T-RF, ...)");
    train->add_option("--seed", t_seed, "base seed override");
    train->add_option("--replication", t_replication, "replication index");
    train->add_option("--out", t_out, "bundle output directory");

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "CATE MSE of a bundle on fresh points");
    fs::path e_bundle;
    std::uint64_t e_seed = 7;
    std::size_t e_points = 1000;
    std::optional<fs::path> e_out;
    evaluate->add_option("--bundle", e_bundle, "bundle directory")->required();
    evaluate->add_option("--seed", e_seed, "test point seed");
    evaluate->add_option("--points", e_points, "number of test points");
    evaluate->add_option("--out", e_out, "per-point prediction csv");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "run a sweep from a config file");
    fs::path s_config, s_out = "sweep-out";
    SweepOverrides s_over;
    sweep_cmd->add_option("--config", s_config, "sweep config (json)")->required();
    sweep_cmd->add_option("--out", s_out, "output directory");
    sweep_cmd->add_option("--seed", s_over.seed, "base seed override");
    sweep_cmd->add_option("--models", s_over.models, "comma-separated model ids");
    sweep_cmd->add_option("--family", s_over.family, "family override");
    sweep_cmd->add_option("--replications", s_over.replications, "replication override");

    // table
    auto* table_cmd = app.add_subcommand("table", "render a comparison table");
    std::vector<fs::path> tb_inputs;
    std::optional<fs::path> tb_out, tb_csv;
    bool tb_reference = false;
    table_cmd->add_option("--in", tb_inputs, "summary.csv file(s)")->required();
    table_cmd->add_option("--out", tb_out, "table text output");
    table_cmd->add_option("--csv", tb_csv, "table csv output");
    table_cmd->add_flag("--reference", tb_reference, "annotate with published values");

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed())
            return cmd_generate(g_family, g_controls, g_treatments, g_d, g_noise, g_seed,
                                g_out);
        if (train->parsed())
            return cmd_train(t_config, t_model, t_seed, t_replication, t_out);
        if (evaluate->parsed())
            return cmd_evaluate(e_bundle, e_seed, e_points, e_out);
        if (sweep_cmd->parsed())
            return cmd_sweep(s_config, s_out, s_over);
        if (table_cmd->parsed())
            return cmd_table(tb_inputs, tb_out, tb_csv, tb_reference);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
