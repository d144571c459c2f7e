#pragma once
// Dataset CSV export/import (header: group,t,x1..xd,y) and the generator
// spec sidecar used to replicate a dataset exactly.

#include "tnw/data/dataset.hpp"
#include "tnw/data/generators.hpp"

#include <filesystem>
#include <iosfwd>

#include <json.hpp>

namespace tnw::data {

void write_dataset_csv(const Dataset& ds, std::ostream& out);
void write_dataset_csv(const Dataset& ds, const std::filesystem::path& path);

Dataset read_dataset_csv(std::istream& in);
Dataset read_dataset_csv(const std::filesystem::path& path);

nlohmann::json spec_to_json(const GeneratorSpec& spec);
GeneratorSpec spec_from_json(const nlohmann::json& j);

void write_spec_sidecar(const GeneratorSpec& spec, const std::filesystem::path& path);
GeneratorSpec read_spec_sidecar(const std::filesystem::path& path);

} // namespace tnw::data
