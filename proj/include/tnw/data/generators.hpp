#pragma once
// Synthetic control/treatment populations: spiral, logarithmic, power and
// indicator families, each with an exact noise-free truth oracle. Family
// parameters are drawn once per replication so the underlying response
// functions, and hence the true effect, are well defined.

#include "tnw/data/dataset.hpp"
#include "tnw/rng.hpp"

#include <cstdint>
#include <string>
#include <variant>

namespace tnw::data {

enum class Family { Spiral, Logarithmic, Power, Indicator };

std::string family_name(Family f);
Family family_from_name(std::string_view name);

struct SpiralParams {
    double a_control = 0, b_control = 0;
    double a_treatment = 0, b_treatment = 0;
};

struct LogParams {
    std::vector<double> a; // shared feature slopes, one per dimension
    double b_control = 0, b_treatment = 0;
};

struct PowerParams {
    double a_control = 0, b_control = 0;
    double a_treatment = 0, b_treatment = 0;
    double s = 2.5;
};

struct IndicatorParams {
    std::vector<double> beta;
};

using FamilyParams = std::variant<SpiralParams, LogParams, PowerParams, IndicatorParams>;

struct GeneratorSpec {
    Family family = Family::Spiral;
    std::size_t d = 10;
    double noise_std = 0.0;
    std::uint64_t seed = 0;
    FamilyParams params;

    void validate() const;
};

// Draws the per-replication family parameters from their intervals.
GeneratorSpec sample_generator_spec(Family family, std::size_t d, double noise_std,
                                    std::uint64_t seed);

// Distinct draw streams within one spec.
enum class SampleTag : std::uint64_t { Train = 0, Validation = 1, Test = 2 };

Dataset generate(const GeneratorSpec& spec, std::size_t count, Group g,
                 SampleTag tag = SampleTag::Train);

// Per-family entry points; each checks the spec's family.
Dataset gen_spiral(const GeneratorSpec&, std::size_t count, Group, SampleTag = SampleTag::Train);
Dataset gen_logarithmic(const GeneratorSpec&, std::size_t count, Group, SampleTag = SampleTag::Train);
Dataset gen_power(const GeneratorSpec&, std::size_t count, Group, SampleTag = SampleTag::Train);
Dataset gen_indicator(const GeneratorSpec&, std::size_t count, Group, SampleTag = SampleTag::Train);

// True noise-free feature index set replaced by unit Gaussians in the power
// family (1-based feature numbers i with 0.8 < i/sqrt(d) < 1.6).
std::vector<std::size_t> power_noise_features(std::size_t d);

// Deterministic feature maps of the latent families.
void spiral_features(double t, std::span<double> x);
void log_features(std::span<const double> slopes, double t, std::span<double> x);
double power_feature(double t, std::size_t feature_1based, std::size_t d);

// Noise-free response functions of the replication.
class TruthOracle {
public:
    explicit TruthOracle(const GeneratorSpec& spec) : spec_(spec) {}

    double g0(std::span<const double> x, double latent) const;
    double g1(std::span<const double> x, double latent) const;
    double cate(std::span<const double> x, double latent) const; // g1 - g0

private:
    double respond(std::span<const double> x, double latent, Group g) const;
    GeneratorSpec spec_;
};

struct TestSet {
    Matrix features;
    std::vector<double> latent;
    std::vector<double> true_g0;
    std::vector<double> true_g1;
    std::vector<double> true_cate;

    std::size_t count() const { return true_cate.size(); }
};

TestSet make_test_set(const GeneratorSpec& spec, std::size_t count);

struct Split {
    Dataset train;      // c controls then ceil(ratio*c) treatments
    Dataset validation; // fresh rows, never used for fitting
    TestSet test;
};

Split make_split(const GeneratorSpec& spec, std::size_t c, double ratio,
                 double val_fraction, std::size_t test_count = 1000);

} // namespace tnw::data
