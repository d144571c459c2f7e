#include "tnw/bench/table.hpp"

#include "tnw/numio.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace tnw::bench {

namespace {

// Table 1 of the study this benchmark mirrors; annotation only, never a
// test assertion (seeds and kernel architectures behind it are unpublished).
const std::map<std::pair<data::Family, ModelId>, double>& reference_table() {
    using F = data::Family;
    using M = ModelId;
    static const std::map<std::pair<F, M>, double> table{
        {{F::Spiral, M::T_NW}, 3.806},      {{F::Spiral, M::S_NW}, 3.629},
        {{F::Spiral, M::X_NW}, 3.279},      {{F::Spiral, M::T_RF}, 2.278},
        {{F::Spiral, M::S_RF}, 2.575},      {{F::Spiral, M::X_RF}, 1.385},
        {{F::Spiral, M::TNW}, 0.232},       {{F::Logarithmic, M::T_NW}, 0.377},
        {{F::Logarithmic, M::S_NW}, 0.341}, {{F::Logarithmic, M::X_NW}, 0.542},
        {{F::Logarithmic, M::T_RF}, 0.051}, {{F::Logarithmic, M::S_RF}, 0.060},
        {{F::Logarithmic, M::X_RF}, 0.202}, {{F::Logarithmic, M::TNW}, 0.026},
        {{F::Power, M::T_NW}, 1.722},       {{F::Power, M::S_NW}, 1.719},
        {{F::Power, M::X_NW}, 0.632},       {{F::Power, M::T_RF}, 2.743},
        {{F::Power, M::S_RF}, 0.839},       {{F::Power, M::X_RF}, 0.805},
        {{F::Power, M::TNW}, 0.353},        {{F::Indicator, M::T_NW}, 0.650},
        {{F::Indicator, M::S_NW}, 0.549},   {{F::Indicator, M::X_NW}, 0.353},
        {{F::Indicator, M::T_RF}, 0.337},   {{F::Indicator, M::S_RF}, 0.434},
        {{F::Indicator, M::X_RF}, 0.061},   {{F::Indicator, M::TNW}, 0.257},
    };
    return table;
}

std::string trim_number(double v) {
    if (std::isnan(v))
        return "failed";
    std::ostringstream os;
    os << std::setprecision(4) << std::fixed << v;
    return os.str();
}

} // namespace

std::optional<double> reference_mse(data::Family family, ModelId model) {
    const auto& table = reference_table();
    const auto it = table.find({family, model});
    if (it == table.end())
        return std::nullopt;
    return it->second;
}

ComparisonTable table_from_summaries(const SweepResult& result) {
    ComparisonTable table;
    table.models = result.spec.base.models;
    for (double value : result.spec.values) {
        TableColumn col;
        col.label = axis_name(result.spec.axis) + "=" + format_double(value);
        for (const CellSummary& s : result.summaries) {
            if (s.axis_value != value)
                continue;
            col.mean[s.model] = s.cate_mse_mean;
            col.std_dev[s.model] = s.cate_mse_std;
        }
        table.columns.push_back(std::move(col));
    }
    return table;
}

ComparisonTable table_from_family_results(const std::vector<SweepResult>& results) {
    ComparisonTable table;
    for (const SweepResult& r : results)
        for (ModelId id : r.spec.base.models)
            if (std::find(table.models.begin(), table.models.end(), id) ==
                table.models.end())
                table.models.push_back(id);
    for (const SweepResult& r : results) {
        TableColumn col;
        col.label = data::family_name(r.spec.base.family);
        for (const CellSummary& s : r.summaries) {
            // merge over values: single-value sweeps expected here
            col.mean[s.model] = s.cate_mse_mean;
            col.std_dev[s.model] = s.cate_mse_std;
        }
        table.columns.push_back(std::move(col));
    }
    return table;
}

void annotate_with_references(ComparisonTable& table) {
    for (TableColumn& col : table.columns) {
        data::Family family;
        try {
            family = data::family_from_name(col.label);
        } catch (const std::invalid_argument&) {
            continue; // axis-valued column
        }
        for (ModelId id : table.models)
            if (const auto ref = reference_mse(family, id))
                col.reference[id] = *ref;
    }
}

std::string render_table(const ComparisonTable& table) {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> header{"model"};
    for (const TableColumn& col : table.columns)
        header.push_back(col.label);
    cells.push_back(header);

    // lowest mean per column wins; ties all flagged
    std::vector<double> best(table.columns.size(),
                             std::numeric_limits<double>::infinity());
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        for (const auto& [id, mean] : table.columns[c].mean)
            if (!std::isnan(mean))
                best[c] = std::min(best[c], mean);

    for (ModelId id : table.models) {
        std::vector<std::string> row{model_name(id)};
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            const TableColumn& col = table.columns[c];
            const auto it = col.mean.find(id);
            if (it == col.mean.end()) {
                row.push_back("-");
                continue;
            }
            std::string cell = trim_number(it->second);
            if (!std::isnan(it->second) && it->second == best[c])
                cell += " *";
            if (const auto ref = col.reference.find(id); ref != col.reference.end())
                cell += " (ref " + trim_number(ref->second) + ")";
            row.push_back(std::move(cell));
        }
        cells.push_back(std::move(row));
    }

    std::vector<std::size_t> widths(cells[0].size(), 0);
    for (const auto& row : cells)
        for (std::size_t i = 0; i < row.size(); ++i)
            widths[i] = std::max(widths[i], row[i].size());

    std::ostringstream os;
    for (std::size_t r = 0; r < cells.size(); ++r) {
        for (std::size_t i = 0; i < cells[r].size(); ++i) {
            os << std::left << std::setw(static_cast<int>(widths[i])) << cells[r][i];
            if (i + 1 < cells[r].size())
                os << "  ";
        }
        os << '\n';
        if (r == 0) {
            for (std::size_t i = 0; i < widths.size(); ++i) {
                os << std::string(widths[i], '-');
                if (i + 1 < widths.size())
                    os << "  ";
            }
            os << '\n';
        }
    }
    return os.str();
}

void write_table_csv(const ComparisonTable& table, std::ostream& out) {
    out << "model";
    for (const TableColumn& col : table.columns)
        out << ',' << col.label << "_mean," << col.label << "_std," << col.label
            << "_best";
    out << '\n';

    std::vector<double> best(table.columns.size(),
                             std::numeric_limits<double>::infinity());
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        for (const auto& [id, mean] : table.columns[c].mean)
            if (!std::isnan(mean))
                best[c] = std::min(best[c], mean);

    for (ModelId id : table.models) {
        out << model_name(id);
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            const TableColumn& col = table.columns[c];
            const auto mean = col.mean.find(id);
            const auto sd = col.std_dev.find(id);
            if (mean == col.mean.end()) {
                out << ",,,";
                continue;
            }
            out << ',' << format_double(mean->second) << ','
                << (sd == col.std_dev.end() ? "" : format_double(sd->second)) << ','
                << (!std::isnan(mean->second) && mean->second == best[c] ? "1" : "0");
        }
        out << '\n';
    }
}

} // namespace tnw::bench
