#include "tnw/data/io.hpp"

#include "tnw/numio.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tnw::data {

void write_dataset_csv(const Dataset& ds, std::ostream& out) {
    out << "group,t";
    for (std::size_t k = 1; k <= ds.dim(); ++k)
        out << ",x" << k;
    out << ",y\n";
    for (std::size_t i = 0; i < ds.count(); ++i) {
        out << group_name(ds.group[i]) << ',';
        out << (std::isnan(ds.latent[i]) ? "nan" : format_double(ds.latent[i]));
        for (double v : ds.features.row(i))
            out << ',' << format_double(v);
        out << ',' << format_double(ds.outcomes[i]) << '\n';
    }
}

void write_dataset_csv(const Dataset& ds, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path.string());
    write_dataset_csv(ds, out);
    if (!out)
        throw std::runtime_error("failed writing: " + path.string());
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

} // namespace

Dataset read_dataset_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("dataset csv: empty file");
    const auto header = split_csv_line(line);
    if (header.size() < 3 || header.front() != "group" || header[1] != "t" ||
        header.back() != "y")
        throw std::runtime_error("dataset csv: unexpected header");
    const std::size_t d = header.size() - 3;

    Dataset ds;
    ds.features = Matrix(0, d);
    std::vector<double> row(d);
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != d + 3)
            throw std::runtime_error("dataset csv: row with " +
                                     std::to_string(fields.size()) + " fields, expected " +
                                     std::to_string(d + 3));
        Group g;
        if (fields[0] == "control")
            g = Group::Control;
        else if (fields[0] == "treatment")
            g = Group::Treatment;
        else
            throw std::runtime_error("dataset csv: bad group '" + fields[0] + "'");
        const double latent = fields[1] == "nan" ? kMissingLatent : parse_double(fields[1]);
        for (std::size_t k = 0; k < d; ++k)
            row[k] = parse_double(fields[2 + k]);
        ds.features.append_row(row);
        ds.latent.push_back(latent);
        ds.group.push_back(g);
        ds.outcomes.push_back(parse_double(fields.back()));
    }
    return ds;
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open dataset csv: " + path.string());
    return read_dataset_csv(in);
}

nlohmann::json spec_to_json(const GeneratorSpec& spec) {
    nlohmann::json j;
    j["family"] = family_name(spec.family);
    j["d"] = spec.d;
    j["noise_std"] = spec.noise_std;
    j["seed"] = spec.seed;
    nlohmann::json p;
    switch (spec.family) {
    case Family::Spiral: {
        const auto& sp = std::get<SpiralParams>(spec.params);
        p = {{"a_control", sp.a_control},
             {"b_control", sp.b_control},
             {"a_treatment", sp.a_treatment},
             {"b_treatment", sp.b_treatment}};
        break;
    }
    case Family::Logarithmic: {
        const auto& lp = std::get<LogParams>(spec.params);
        p = {{"a", lp.a}, {"b_control", lp.b_control}, {"b_treatment", lp.b_treatment}};
        break;
    }
    case Family::Power: {
        const auto& pp = std::get<PowerParams>(spec.params);
        p = {{"a_control", pp.a_control},
             {"b_control", pp.b_control},
             {"a_treatment", pp.a_treatment},
             {"b_treatment", pp.b_treatment},
             {"s", pp.s}};
        break;
    }
    case Family::Indicator: {
        const auto& ip = std::get<IndicatorParams>(spec.params);
        p = {{"beta", ip.beta}};
        break;
    }
    }
    j["params"] = p;
    return j;
}

GeneratorSpec spec_from_json(const nlohmann::json& j) {
    GeneratorSpec spec;
    spec.family = family_from_name(j.at("family").get<std::string>());
    spec.d = j.at("d").get<std::size_t>();
    spec.noise_std = j.at("noise_std").get<double>();
    spec.seed = j.at("seed").get<std::uint64_t>();
    const nlohmann::json& p = j.at("params");
    switch (spec.family) {
    case Family::Spiral: {
        SpiralParams sp;
        sp.a_control = p.at("a_control").get<double>();
        sp.b_control = p.at("b_control").get<double>();
        sp.a_treatment = p.at("a_treatment").get<double>();
        sp.b_treatment = p.at("b_treatment").get<double>();
        spec.params = sp;
        break;
    }
    case Family::Logarithmic: {
        LogParams lp;
        lp.a = p.at("a").get<std::vector<double>>();
        lp.b_control = p.at("b_control").get<double>();
        lp.b_treatment = p.at("b_treatment").get<double>();
        spec.params = lp;
        break;
    }
    case Family::Power: {
        PowerParams pp;
        pp.a_control = p.at("a_control").get<double>();
        pp.b_control = p.at("b_control").get<double>();
        pp.a_treatment = p.at("a_treatment").get<double>();
        pp.b_treatment = p.at("b_treatment").get<double>();
        pp.s = p.at("s").get<double>();
        spec.params = pp;
        break;
    }
    case Family::Indicator: {
        IndicatorParams ip;
        ip.beta = p.at("beta").get<std::vector<double>>();
        spec.params = ip;
        break;
    }
    }
    spec.validate();
    return spec;
}

void write_spec_sidecar(const GeneratorSpec& spec, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open sidecar for writing: " + path.string());
    out << spec_to_json(spec).dump(2) << '\n';
}

GeneratorSpec read_spec_sidecar(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open sidecar: " + path.string());
    nlohmann::json j;
    in >> j;
    return spec_from_json(j);
}

} // namespace tnw::data
