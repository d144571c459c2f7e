#include "tnw/data/generators.hpp"

#include "tnw/simd/ops.hpp"

#include <cmath>
#include <stdexcept>

namespace tnw::data {

namespace {

constexpr double kSpiralTLo = 0.0, kSpiralTHi = 10.0;
constexpr double kLogTLo = 0.5, kLogTHi = 5.0;
constexpr double kPowerTLo = 0.0, kPowerTHi = 5.0;

RngStream param_stream(std::uint64_t seed) {
    return RngStream(derive_seed(seed, {hash_tag("family-params")}));
}

RngStream row_stream(const GeneratorSpec& spec, Group g, SampleTag tag) {
    return RngStream(derive_seed(spec.seed, {hash_tag("rows"), static_cast<std::uint64_t>(g),
                                             static_cast<std::uint64_t>(tag)}));
}

RngStream test_stream(const GeneratorSpec& spec) {
    return RngStream(derive_seed(spec.seed,
                                 {hash_tag("rows"), hash_tag("test-points"),
                                  static_cast<std::uint64_t>(SampleTag::Test)}));
}

// Uniform over [-4,-1] u [1,4].
double draw_split_interval(RngStream& rng) {
    const double w = rng.uniform(0.0, 6.0);
    return w < 3.0 ? -4.0 + w : 1.0 + (w - 3.0);
}

void power_features(double t, std::span<double> x, RngStream& rng) {
    const double root_d = std::sqrt(static_cast<double>(x.size()));
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double p = static_cast<double>(k + 1) / root_d;
        x[k] = (p > 0.8 && p < 1.6) ? rng.normal() : power_feature(t, k + 1, x.size());
    }
}

} // namespace

std::string family_name(Family f) {
    switch (f) {
    case Family::Spiral: return "spiral";
    case Family::Logarithmic: return "logarithmic";
    case Family::Power: return "power";
    case Family::Indicator: return "indicator";
    }
    throw std::logic_error("bad family");
}

Family family_from_name(std::string_view name) {
    if (name == "spiral") return Family::Spiral;
    if (name == "logarithmic") return Family::Logarithmic;
    if (name == "power") return Family::Power;
    if (name == "indicator") return Family::Indicator;
    throw std::invalid_argument("unknown family '" + std::string(name) + "'");
}

void GeneratorSpec::validate() const {
    if (d < 1)
        throw std::invalid_argument("GeneratorSpec: d must be at least 1");
    if (noise_std < 0.0)
        throw std::invalid_argument("GeneratorSpec: noise_std must be non-negative");
    if (family == Family::Logarithmic) {
        const auto& p = std::get<LogParams>(params);
        if (p.a.size() != d)
            throw std::invalid_argument("GeneratorSpec: logarithmic slope vector length");
    } else if (family == Family::Power) {
        const auto& p = std::get<PowerParams>(params);
        if (p.b_control <= 0.0 || p.b_treatment <= 0.0)
            throw std::invalid_argument("GeneratorSpec: power family b must be positive");
    } else if (family == Family::Indicator) {
        const auto& p = std::get<IndicatorParams>(params);
        if (p.beta.size() != d)
            throw std::invalid_argument("GeneratorSpec: beta length");
    }
}

GeneratorSpec sample_generator_spec(Family family, std::size_t d, double noise_std,
                                    std::uint64_t seed) {
    if (d < 1)
        throw std::invalid_argument("sample_generator_spec: d must be at least 1");
    GeneratorSpec spec;
    spec.family = family;
    spec.d = d;
    spec.noise_std = noise_std;
    spec.seed = seed;

    RngStream rng = param_stream(seed);
    switch (family) {
    case Family::Spiral: {
        SpiralParams p;
        p.a_control = rng.uniform(1.0, 4.0);
        p.b_control = rng.uniform(1.0, 4.0);
        p.a_treatment = rng.uniform(8.0, 10.0);
        p.b_treatment = rng.uniform(8.0, 10.0);
        spec.params = p;
        break;
    }
    case Family::Logarithmic: {
        LogParams p;
        p.a.resize(d);
        for (double& a : p.a)
            a = draw_split_interval(rng);
        p.b_control = rng.uniform(1.0, 4.0);
        p.b_treatment = rng.uniform(-4.0, -1.0);
        spec.params = p;
        break;
    }
    case Family::Power: {
        PowerParams p;
        p.a_control = rng.uniform(1.0, 2.0);
        p.b_control = rng.uniform(0.25, 1.0);
        p.a_treatment = rng.uniform(2.0, 4.0);
        p.b_treatment = rng.uniform(1.0, 2.0);
        spec.params = p;
        break;
    }
    case Family::Indicator: {
        IndicatorParams p;
        p.beta.resize(d);
        for (double& b : p.beta)
            b = rng.uniform(-5.0, 5.0);
        spec.params = p;
        break;
    }
    }
    spec.validate();
    return spec;
}

void spiral_features(double t, std::span<double> x) {
    const std::size_t d = x.size();
    for (std::size_t k = 1; k <= d / 2; ++k) {
        x[2 * k - 2] = t * std::sin(t * static_cast<double>(k));
        x[2 * k - 1] = t * std::cos(t * static_cast<double>(k));
    }
    if (d % 2 == 1) {
        const double k = std::ceil(static_cast<double>(d) / 2.0);
        x[d - 1] = t * std::sin(t * k);
    }
}

void log_features(std::span<const double> slopes, double t, std::span<double> x) {
    const double lt = std::log(t);
    for (std::size_t k = 0; k < x.size(); ++k)
        x[k] = slopes[k] * lt;
}

double power_feature(double t, std::size_t feature_1based, std::size_t d) {
    const double p =
        static_cast<double>(feature_1based) / std::sqrt(static_cast<double>(d));
    return std::pow(t, p);
}

std::vector<std::size_t> power_noise_features(std::size_t d) {
    std::vector<std::size_t> idx;
    const double root_d = std::sqrt(static_cast<double>(d));
    for (std::size_t i = 1; i <= d; ++i) {
        const double p = static_cast<double>(i) / root_d;
        if (p > 0.8 && p < 1.6)
            idx.push_back(i);
    }
    return idx;
}

double TruthOracle::respond(std::span<const double> x, double latent, Group g) const {
    const bool treated = g == Group::Treatment;
    switch (spec_.family) {
    case Family::Spiral: {
        const auto& p = std::get<SpiralParams>(spec_.params);
        if (std::isnan(latent))
            throw std::invalid_argument("TruthOracle: spiral family needs the latent t");
        return treated ? p.a_treatment * latent + p.b_treatment
                       : p.a_control * latent + p.b_control;
    }
    case Family::Logarithmic: {
        const auto& p = std::get<LogParams>(spec_.params);
        if (std::isnan(latent))
            throw std::invalid_argument("TruthOracle: logarithmic family needs the latent t");
        const double b = treated ? p.b_treatment : p.b_control;
        return b * (std::log(latent) + std::sin(latent));
    }
    case Family::Power: {
        const auto& p = std::get<PowerParams>(spec_.params);
        if (std::isnan(latent))
            throw std::invalid_argument("TruthOracle: power family needs the latent t");
        const double a = treated ? p.a_treatment : p.a_control;
        const double b = treated ? p.b_treatment : p.b_control;
        const double z = latent - p.s;
        return a * std::exp(-(z * z) / b);
    }
    case Family::Indicator: {
        const auto& p = std::get<IndicatorParams>(spec_.params);
        if (x.size() != spec_.d)
            throw std::invalid_argument("TruthOracle: indicator family needs the features");
        double v = simd::dot(x.data(), p.beta.data(), x.size());
        if (x[0] > 0.5)
            v += 5.0;
        if (treated && x.size() > 1 && x[1] > 0.1)
            v += 8.0;
        return v;
    }
    }
    throw std::logic_error("bad family");
}

double TruthOracle::g0(std::span<const double> x, double latent) const {
    return respond(x, latent, Group::Control);
}

double TruthOracle::g1(std::span<const double> x, double latent) const {
    return respond(x, latent, Group::Treatment);
}

double TruthOracle::cate(std::span<const double> x, double latent) const {
    return g1(x, latent) - g0(x, latent);
}

Dataset generate(const GeneratorSpec& spec, std::size_t count, Group g, SampleTag tag) {
    spec.validate();
    if (count < 1)
        throw std::invalid_argument("generate: count must be at least 1");

    RngStream rng = row_stream(spec, g, tag);
    const TruthOracle oracle(spec);

    Dataset out;
    out.features = Matrix(count, spec.d);
    out.outcomes.resize(count);
    out.group.assign(count, g);
    out.latent.resize(count);

    std::vector<double> x(spec.d);
    for (std::size_t i = 0; i < count; ++i) {
        double latent = kMissingLatent;
        switch (spec.family) {
        case Family::Spiral:
            latent = rng.uniform(kSpiralTLo, kSpiralTHi);
            spiral_features(latent, x);
            break;
        case Family::Logarithmic:
            latent = rng.uniform(kLogTLo, kLogTHi);
            log_features(std::get<LogParams>(spec.params).a, latent, x);
            break;
        case Family::Power:
            latent = rng.uniform(kPowerTLo, kPowerTHi);
            power_features(latent, x, rng);
            break;
        case Family::Indicator:
            for (double& v : x)
                v = rng.uniform(-1.0, 1.0);
            break;
        }
        double y = oracle.respond(x, latent, g);
        if (spec.noise_std > 0.0)
            y += rng.normal(0.0, spec.noise_std);
        for (std::size_t k = 0; k < spec.d; ++k)
            out.features(i, k) = x[k];
        out.outcomes[i] = y;
        out.latent[i] = latent;
    }
    return out;
}

namespace {
Dataset generate_checked(const GeneratorSpec& spec, Family expected, std::size_t count,
                         Group g, SampleTag tag) {
    if (spec.family != expected)
        throw std::invalid_argument("generator called with a spec for family '" +
                                    family_name(spec.family) + "'");
    return generate(spec, count, g, tag);
}
} // namespace

Dataset gen_spiral(const GeneratorSpec& s, std::size_t n, Group g, SampleTag t) {
    return generate_checked(s, Family::Spiral, n, g, t);
}
Dataset gen_logarithmic(const GeneratorSpec& s, std::size_t n, Group g, SampleTag t) {
    return generate_checked(s, Family::Logarithmic, n, g, t);
}
Dataset gen_power(const GeneratorSpec& s, std::size_t n, Group g, SampleTag t) {
    return generate_checked(s, Family::Power, n, g, t);
}
Dataset gen_indicator(const GeneratorSpec& s, std::size_t n, Group g, SampleTag t) {
    return generate_checked(s, Family::Indicator, n, g, t);
}

TestSet make_test_set(const GeneratorSpec& spec, std::size_t count) {
    spec.validate();
    RngStream rng = test_stream(spec);
    const TruthOracle oracle(spec);

    TestSet out;
    out.features = Matrix(count, spec.d);
    out.latent.resize(count);
    out.true_g0.resize(count);
    out.true_g1.resize(count);
    out.true_cate.resize(count);

    std::vector<double> x(spec.d);
    for (std::size_t i = 0; i < count; ++i) {
        double latent = kMissingLatent;
        switch (spec.family) {
        case Family::Spiral:
            latent = rng.uniform(kSpiralTLo, kSpiralTHi);
            spiral_features(latent, x);
            break;
        case Family::Logarithmic:
            latent = rng.uniform(kLogTLo, kLogTHi);
            log_features(std::get<LogParams>(spec.params).a, latent, x);
            break;
        case Family::Power:
            latent = rng.uniform(kPowerTLo, kPowerTHi);
            power_features(latent, x, rng);
            break;
        case Family::Indicator:
            for (double& v : x)
                v = rng.uniform(-1.0, 1.0);
            break;
        }
        for (std::size_t k = 0; k < spec.d; ++k)
            out.features(i, k) = x[k];
        out.latent[i] = latent;
        out.true_g0[i] = oracle.g0(x, latent);
        out.true_g1[i] = oracle.g1(x, latent);
        out.true_cate[i] = out.true_g1[i] - out.true_g0[i];
    }
    return out;
}

Split make_split(const GeneratorSpec& spec, std::size_t c, double ratio,
                 double val_fraction, std::size_t test_count) {
    if (c < 10)
        throw std::invalid_argument("make_split: need at least 10 controls");
    if (!(ratio > 0.0 && ratio <= 1.0))
        throw std::invalid_argument("make_split: ratio must lie in (0, 1]");
    const auto n_treat = static_cast<std::size_t>(
        std::ceil(ratio * static_cast<double>(c)));
    if (n_treat < 2)
        throw std::invalid_argument("make_split: ratio*c below 2, treatment side "
                                    "cannot support a regression");
    if (!(val_fraction > 0.0 && val_fraction <= 1.0))
        throw std::invalid_argument("make_split: val_fraction must lie in (0, 1]");

    const auto val_c = static_cast<std::size_t>(
        std::ceil(val_fraction * static_cast<double>(c)));
    const auto val_t = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(ratio * static_cast<double>(val_c))));

    Split split;
    split.train = generate(spec, c, Group::Control, SampleTag::Train);
    split.train.append(generate(spec, n_treat, Group::Treatment, SampleTag::Train));
    split.validation = generate(spec, val_c, Group::Control, SampleTag::Validation);
    split.validation.append(generate(spec, val_t, Group::Treatment, SampleTag::Validation));
    split.test = make_test_set(spec, test_count);
    return split;
}

} // namespace tnw::data
