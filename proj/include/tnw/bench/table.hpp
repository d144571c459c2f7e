#pragma once
// Comparison-table rendering: rows are models, columns are families or axis
// values, best cell per column flagged. A delimited companion file carries
// the same numbers for machine consumption.

#include "tnw/bench/harness.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tnw::bench {

struct TableColumn {
    std::string label;
    std::map<ModelId, double> mean;               // NaN marks a failed cell
    std::map<ModelId, double> std_dev;
    std::map<ModelId, double> reference;          // optional annotations
};

struct ComparisonTable {
    std::vector<ModelId> models; // row order
    std::vector<TableColumn> columns;
};

// Columns labelled by axis value, in sweep order.
ComparisonTable table_from_summaries(const SweepResult& result);

// Merge single-value sweeps of different families into family columns.
ComparisonTable table_from_family_results(const std::vector<SweepResult>& results);

// Published comparison values for a (family, model) pair, when one exists.
std::optional<double> reference_mse(data::Family family, ModelId model);

// Attach reference annotations to family-labelled columns.
void annotate_with_references(ComparisonTable& table);

// Plain-text rendering; lowest mean per column is flagged with '*' (ties:
// all flagged).
std::string render_table(const ComparisonTable& table);

// Deterministic delimited form: model rows, one column block per table column.
void write_table_csv(const ComparisonTable& table, std::ostream& out);

} // namespace tnw::bench
