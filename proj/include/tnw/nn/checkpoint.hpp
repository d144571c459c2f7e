#pragma once
// Plain-text kernel checkpoint: layer shapes plus row-major parameter
// values in shortest round-trip decimal form, so load(save(net)) is
// value-identical.

#include "tnw/nn/mlp.hpp"

#include <filesystem>
#include <iosfwd>

namespace tnw::nn {

void save_checkpoint(const KernelMlp& net, std::ostream& out);
void save_checkpoint(const KernelMlp& net, const std::filesystem::path& path);

KernelMlp load_checkpoint(std::istream& in);
KernelMlp load_checkpoint(const std::filesystem::path& path);

} // namespace tnw::nn
