#include "tnw/nn/checkpoint.hpp"

#include "tnw/numio.hpp"

#include <fstream>
#include <sstream>

namespace tnw::nn {

namespace {
constexpr const char* kMagic = "tnw-kernel-checkpoint v1";
}

void save_checkpoint(const KernelMlp& net, std::ostream& out) {
    out << kMagic << '\n';
    out << "input_dim " << net.input_dim() << '\n';
    out << "layers " << net.layers().size() << '\n';
    for (const LayerShape& s : net.layers())
        out << "layer " << s.in << ' ' << s.out << ' ' << activation_name(s.activation)
            << '\n';
    out << "params " << net.param_count() << '\n';
    for (double v : net.params())
        out << format_double(v) << '\n';
}

void save_checkpoint(const KernelMlp& net, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open checkpoint for writing: " + path.string());
    save_checkpoint(net, out);
    if (!out)
        throw std::runtime_error("failed writing checkpoint: " + path.string());
}

KernelMlp load_checkpoint(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kMagic)
        throw std::runtime_error("checkpoint: bad header");

    auto expect_field = [&](const std::string& key) {
        std::string word;
        if (!(in >> word) || word != key)
            throw std::runtime_error("checkpoint: expected '" + key + "'");
    };

    std::size_t input_dim = 0;
    expect_field("input_dim");
    in >> input_dim;
    std::size_t n_layers = 0;
    expect_field("layers");
    in >> n_layers;

    std::vector<LayerShape> shapes;
    shapes.reserve(n_layers);
    for (std::size_t i = 0; i < n_layers; ++i) {
        expect_field("layer");
        LayerShape s;
        std::string act;
        in >> s.in >> s.out >> act;
        s.activation = activation_from_name(act);
        shapes.push_back(s);
    }

    std::size_t n_params = 0;
    expect_field("params");
    in >> n_params;

    KernelMlp net = KernelMlp::from_shapes(input_dim, std::move(shapes));
    if (net.param_count() != n_params)
        throw std::runtime_error("checkpoint: parameter count " + std::to_string(n_params) +
                                 " does not match shapes (" +
                                 std::to_string(net.param_count()) + ")");
    std::span<double> params = net.mutable_params();
    std::string token;
    for (std::size_t i = 0; i < n_params; ++i) {
        if (!(in >> token))
            throw std::runtime_error("checkpoint: truncated parameter list");
        params[i] = parse_double(token);
    }
    return net;
}

KernelMlp load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open checkpoint: " + path.string());
    return load_checkpoint(in);
}

} // namespace tnw::nn
