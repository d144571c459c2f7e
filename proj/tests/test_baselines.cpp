#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tnw/baselines/forest.hpp"
#include "tnw/baselines/gaussian_nw.hpp"
#include "tnw/baselines/meta.hpp"
#include "tnw/rng.hpp"

#include <cmath>
#include <optional>

using namespace tnw;
using namespace tnw::baselines;
using data::Dataset;
using data::Group;

namespace {

Dataset make_dataset(Group g, std::vector<double> outcomes,
                     std::vector<std::vector<double>> rows) {
    Dataset ds;
    ds.features = Matrix(0, rows[0].size());
    for (const auto& r : rows)
        ds.features.append_row(r);
    ds.outcomes = std::move(outcomes);
    ds.group.assign(ds.outcomes.size(), g);
    ds.latent.assign(ds.outcomes.size(), data::kMissingLatent);
    return ds;
}

// Whole-set leaf: min_leaf equal to the row count forbids any split.
ForestConfig mean_base_config(std::size_t rows) {
    ForestConfig cfg;
    cfg.n_trees = 1;
    cfg.max_depth = 1;
    cfg.min_leaf = {static_cast<double>(rows), false};
    cfg.bootstrap = false;
    return cfg;
}

struct BruteSplit {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double gain = -1.0;
};

double sse_two_pass(const std::vector<double>& ys) {
    double mean = 0.0;
    for (double y : ys)
        mean += y;
    mean /= static_cast<double>(ys.size());
    double sse = 0.0;
    for (double y : ys)
        sse += (y - mean) * (y - mean);
    return sse;
}

// Exhaustive enumeration over every feature and midpoint, with the same tie
// rule (lowest feature, then lowest threshold — first strict improvement).
BruteSplit brute_force_root_split(const Matrix& x, const std::vector<double>& y,
                                  std::size_t min_leaf) {
    BruteSplit best;
    std::vector<double> all(y.begin(), y.end());
    const double parent = sse_two_pass(all);
    for (std::size_t f = 0; f < x.cols(); ++f) {
        std::vector<double> values;
        for (std::size_t i = 0; i < x.rows(); ++i)
            values.push_back(x(i, f));
        std::vector<double> uniq = values;
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        for (std::size_t k = 0; k + 1 < uniq.size(); ++k) {
            const double mid = 0.5 * (uniq[k] + uniq[k + 1]);
            std::vector<double> left, right;
            for (std::size_t i = 0; i < x.rows(); ++i)
                (x(i, f) < mid ? left : right).push_back(y[i]);
            if (left.size() < min_leaf || right.size() < min_leaf)
                continue;
            const double gain = parent - sse_two_pass(left) - sse_two_pass(right);
            if (gain > best.gain && gain > 0.0) {
                best = {true, static_cast<int>(f), mid, gain};
            }
        }
    }
    return best;
}

} // namespace

TEST_CASE("gaussian nw: single stored row dominates any query") {
    GaussianNw model(2.0);
    Matrix x(1, 3);
    x(0, 0) = 1.0;
    model.fit(x, std::vector<double>{42.0});
    CHECK(model.predict(std::vector<double>{5.0, -5.0, 0.0}) == 42.0);
}

TEST_CASE("gaussian nw: equidistant rows average") {
    GaussianNw model(1.0);
    Matrix x(2, 1);
    x(0, 0) = -1.0;
    x(1, 0) = 1.0;
    model.fit(x, std::vector<double>{2.0, 4.0});
    CHECK(model.predict(std::vector<double>{0.0}) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("gaussian nw: tiny bandwidth collapses onto the coincident row") {
    GaussianNw model(1e-8);
    Matrix x(3, 2);
    x(0, 0) = 0.3;
    x(0, 1) = -0.7;
    x(1, 0) = 1.5;
    x(1, 1) = 0.2;
    x(2, 0) = -2.0;
    x(2, 1) = 2.0;
    model.fit(x, std::vector<double>{1.25, -4.0, 9.0});
    const std::vector<double> q{0.3, -0.7};
    CHECK(std::abs(model.predict(q) - 1.25) < 1e-9);
}

TEST_CASE("gaussian nw weights are a distribution across the whole grid") {
    RngStream rng(6);
    Matrix x(20, 4);
    for (auto& v : x.data())
        v = rng.uniform(-3.0, 3.0);
    std::vector<double> y(20);
    for (auto& v : y)
        v = rng.uniform(-10.0, 10.0);
    for (double gamma : {1e-8, 1e-4, 0.5, 1.0, 700.0, 1e10}) {
        GaussianNw model(gamma);
        model.fit(x, y);
        std::vector<double> q(4);
        for (auto& v : q)
            v = rng.uniform(-3.0, 3.0);
        const auto w = model.weights(q);
        double sum = 0.0;
        for (double v : w) {
            CHECK(v >= 0.0);
            sum += v;
        }
        CHECK(std::abs(sum - 1.0) <= 1e-12);
        CHECK(std::isfinite(model.predict(q)));
    }
}

TEST_CASE("gaussian nw matches the direct unstabilized form when well-conditioned") {
    RngStream rng(16);
    Matrix x(15, 3);
    for (auto& v : x.data())
        v = rng.uniform(-1.0, 1.0);
    std::vector<double> y(15);
    for (auto& v : y)
        v = rng.uniform(-2.0, 2.0);
    const double gamma = 2.0;
    GaussianNw model(gamma);
    model.fit(x, y);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> q(3);
        for (auto& v : q)
            v = rng.uniform(-1.0, 1.0);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < 15; ++i) {
            double d2 = 0.0;
            for (std::size_t k = 0; k < 3; ++k)
                d2 += (q[k] - x(i, k)) * (q[k] - x(i, k));
            const double kv = std::exp(-d2 / gamma);
            num += kv * y[i];
            den += kv;
        }
        CHECK(std::abs(model.predict(q) - num / den) <= 1e-9);
    }
}

TEST_CASE("gaussian nw rejects bad bandwidths") {
    CHECK_THROWS_AS(GaussianNw(0.0), std::invalid_argument);
    CHECK_THROWS_AS(GaussianNw(-1.0), std::invalid_argument);
}

TEST_CASE("fit_tree: constant outcomes give a single leaf") {
    Matrix x(4, 2);
    x(0, 0) = 1;
    x(1, 0) = 2;
    x(2, 0) = 3;
    x(3, 0) = 4;
    const std::vector<double> y{2.5, 2.5, 2.5, 2.5};
    const auto tree = fit_tree(x, y, 8, 1);
    CHECK(tree->is_leaf());
    CHECK(tree->value == 2.5);
    CHECK(tree->count == 4);
}

TEST_CASE("fit_tree: 1-d step data splits between 1 and 2 at depth 1") {
    Matrix x(4, 1);
    x(0, 0) = 0;
    x(1, 0) = 1;
    x(2, 0) = 2;
    x(3, 0) = 3;
    const std::vector<double> y{0.0, 0.0, 1.0, 1.0};
    const auto tree = fit_tree(x, y, 1, 1);
    REQUIRE(!tree->is_leaf());
    CHECK(tree->feature == 0);
    CHECK(tree->threshold > 1.0);
    CHECK(tree->threshold < 2.0);
    CHECK(tree->left->value == 0.0);
    CHECK(tree->right->value == 1.0);

    const auto brute = brute_force_root_split(x, y, 1);
    CHECK(brute.feature == tree->feature);
    CHECK(brute.threshold == tree->threshold);
}

TEST_CASE("fit_tree: unbounded depth memorizes distinct rows") {
    RngStream rng(9);
    Matrix x(16, 1);
    std::vector<double> y(16);
    for (std::size_t i = 0; i < 16; ++i) {
        x(i, 0) = static_cast<double>(i) + rng.uniform(0.0, 0.5);
        y[i] = rng.uniform(-5.0, 5.0);
    }
    const auto tree = fit_tree(x, y, 32, 1);
    for (std::size_t i = 0; i < 16; ++i)
        CHECK(tree_predict(*tree, x.row(i)) == y[i]);
}

TEST_CASE("fit_tree root split matches exhaustive enumeration on random instances") {
    RngStream rng(2024);
    int checked = 0;
    for (int instance = 0; instance < 50; ++instance) {
        const std::size_t rows = 4 + rng.below(9);   // 4..12
        const std::size_t cols = 1 + rng.below(3);   // 1..3
        Matrix x(rows, cols);
        for (auto& v : x.data())
            v = rng.uniform(-2.0, 2.0);
        std::vector<double> y(rows);
        for (auto& v : y)
            v = rng.uniform(-3.0, 3.0);

        const auto tree = fit_tree(x, y, 1, 1);
        const auto brute = brute_force_root_split(x, y, 1);
        REQUIRE(tree->is_leaf() == !brute.found);
        if (!brute.found)
            continue;
        CHECK(tree->feature == brute.feature);
        CHECK(tree->threshold == brute.threshold);
        ++checked;
    }
    CHECK(checked > 40); // random continuous data essentially always splits
}

TEST_CASE("forest: single tree without bootstrap equals the tree") {
    RngStream rng(31);
    Matrix x(30, 2);
    for (auto& v : x.data())
        v = rng.uniform(-1.0, 1.0);
    std::vector<double> y(30);
    for (std::size_t i = 0; i < 30; ++i)
        y[i] = x(i, 0) * 2.0 + rng.uniform(-0.1, 0.1);

    ForestConfig cfg;
    cfg.n_trees = 1;
    cfg.max_depth = 4;
    cfg.min_leaf = {1.0, false};
    cfg.bootstrap = false;
    Forest forest(cfg);
    forest.fit(x, y);
    const auto tree = fit_tree(x, y, 4, 1);
    for (int rep = 0; rep < 10; ++rep) {
        const std::vector<double> q{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        CHECK(forest.predict(q) == tree_predict(*tree, q));
    }
}

TEST_CASE("forest: constant outcomes and determinism") {
    RngStream rng(32);
    Matrix x(25, 3);
    for (auto& v : x.data())
        v = rng.uniform(0.0, 1.0);
    const std::vector<double> y(25, -1.5);

    ForestConfig cfg;
    cfg.n_trees = 7;
    cfg.max_depth = 5;
    cfg.seed = 99;
    Forest a(cfg), b(cfg);
    a.fit(x, y);
    b.fit(x, y);
    for (int rep = 0; rep < 8; ++rep) {
        std::vector<double> q(3);
        for (auto& v : q)
            v = rng.uniform(0.0, 1.0);
        CHECK(a.predict(q) == -1.5);
        CHECK(a.predict(q) == b.predict(q));
    }
}

TEST_CASE("forest predict before fit is an error") {
    Forest f(ForestConfig{});
    CHECK_THROWS_AS(f.predict(std::vector<double>{0.0}), std::logic_error);
}

TEST_CASE("fractional min_leaf resolves as ceil(fraction * rows)") {
    MinLeaf leaf{0.05, true};
    CHECK(leaf.resolve(200) == 10);
    CHECK(leaf.resolve(201) == 11); // ceil
    MinLeaf abs{3.0, false};
    CHECK(abs.resolve(1000) == 3);
}

TEST_CASE("t-learner: constant groups give the constant difference") {
    const Dataset control =
        make_dataset(Group::Control, {1, 1, 1}, {{0.0}, {0.5}, {1.0}});
    const Dataset treatment =
        make_dataset(Group::Treatment, {3, 3, 3}, {{0.2}, {0.7}, {1.2}});
    const Forest base(mean_base_config(3));
    for (double q : {-1.0, 0.4, 2.0})
        CHECK(t_learner_cate(control, treatment, base, std::vector<double>{q}) == 2.0);
}

TEST_CASE("t-learner recovers the indicator effect with deep trees") {
    // dense grid, effect 8 wherever x2 > 0.1
    std::vector<std::vector<double>> rows;
    std::vector<double> y0, y1;
    for (double x1 = -0.95; x1 < 1.0; x1 += 0.1) {
        for (double x2 = -0.95; x2 < 1.0; x2 += 0.1) {
            rows.push_back({x1, x2});
            const double base = 5.0 * (x1 > 0.5 ? 1.0 : 0.0);
            y0.push_back(base);
            y1.push_back(base + 8.0 * (x2 > 0.1 ? 1.0 : 0.0));
        }
    }
    const Dataset control = make_dataset(Group::Control, y0, rows);
    const Dataset treatment = make_dataset(Group::Treatment, y1, rows);

    ForestConfig cfg;
    cfg.n_trees = 1;
    cfg.max_depth = 12;
    cfg.min_leaf = {1.0, false};
    cfg.bootstrap = false;
    const Forest base(cfg);
    CHECK(t_learner_cate(control, treatment, base, std::vector<double>{-0.3, 0.5}) == 8.0);
    CHECK(t_learner_cate(control, treatment, base, std::vector<double>{-0.3, -0.5}) == 0.0);
}

TEST_CASE("meta-learners vanish on identical groups") {
    RngStream rng(77);
    std::vector<std::vector<double>> rows;
    std::vector<double> y;
    for (int i = 0; i < 24; ++i) {
        rows.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1)});
        y.push_back(rng.uniform(-5, 5));
    }
    const Dataset control = make_dataset(Group::Control, y, rows);
    Dataset treatment = control;
    treatment.group.assign(treatment.count(), Group::Treatment);

    ForestConfig cfg;
    cfg.n_trees = 5;
    cfg.max_depth = 4;
    cfg.seed = 11;
    const Forest base(cfg);
    const GaussianNw nw_base(0.5);
    const std::vector<double> q{0.2, -0.2};
    CHECK(t_learner_cate(control, treatment, base, q) == 0.0);
    CHECK(x_learner_cate(control, treatment, base, std::nullopt, q) == 0.0);
    CHECK(t_learner_cate(control, treatment, nw_base, q) == 0.0);
    CHECK(x_learner_cate(control, treatment, nw_base, std::nullopt, q) == 0.0);
}

TEST_CASE("s-learner: training rows carry the indicator as feature d+1") {
    // identical x in both groups: only the indicator separates outcomes
    std::vector<std::vector<double>> rows;
    std::vector<double> y0, y1;
    for (int i = 0; i < 10; ++i) {
        rows.push_back({0.1 * i});
        y0.push_back(0.0);
        y1.push_back(5.0);
    }
    const Dataset control = make_dataset(Group::Control, y0, rows);
    const Dataset treatment = make_dataset(Group::Treatment, y1, rows);

    ForestConfig cfg;
    cfg.n_trees = 1;
    cfg.max_depth = 8;
    cfg.min_leaf = {1.0, false};
    cfg.bootstrap = false;
    const Forest base(cfg);
    CHECK(s_learner_cate(control, treatment, base, std::vector<double>{0.35}) == 5.0);
}

TEST_CASE("s-learner: a depth-1 tree that prefers a real feature ignores T") {
    // the x-split explains everything; the T-split explains nothing
    std::vector<std::vector<double>> rows;
    std::vector<double> y;
    for (int i = 0; i < 12; ++i) {
        rows.push_back({i < 6 ? -1.0 + 0.01 * i : 1.0 + 0.01 * i});
        y.push_back(i < 6 ? 0.0 : 10.0);
    }
    const Dataset control = make_dataset(Group::Control, y, rows);
    Dataset treatment = control;
    treatment.group.assign(treatment.count(), Group::Treatment);

    ForestConfig cfg;
    cfg.n_trees = 1;
    cfg.max_depth = 1;
    cfg.min_leaf = {1.0, false};
    cfg.bootstrap = false;
    const Forest base(cfg);
    for (double q : {-1.0, 0.0, 1.05})
        CHECK(s_learner_cate(control, treatment, base, std::vector<double>{q}) == 0.0);
}

TEST_CASE("x-learner: hand-traced three-stage value on constant groups") {
    const Dataset control =
        make_dataset(Group::Control, {1, 1, 1, 1}, {{0.0}, {0.4}, {0.8}, {1.2}});
    const Dataset treatment =
        make_dataset(Group::Treatment, {3, 3}, {{0.1}, {0.9}});
    const Forest base(mean_base_config(4));
    // D1 = 3 - 1 = 2, D0 = 3 - 1 = 2, tau0 = tau1 = 2 -> blend = 2 for any alpha
    for (double alpha : {0.0, 0.5, 1.0})
        CHECK(x_learner_cate(control, treatment, base, alpha,
                             std::vector<double>{0.5}) == 2.0);
}

TEST_CASE("x-learner: alpha_x = 1 uses the control-side effect alone") {
    // make tau0 and tau1 differ: g1 overestimates on controls only
    const Dataset control =
        make_dataset(Group::Control, {0, 0, 0}, {{0.0}, {0.4}, {0.8}});
    const Dataset treatment =
        make_dataset(Group::Treatment, {4, 6}, {{0.1}, {0.9}});
    const Forest base(mean_base_config(3));
    // g0 = 0, g1 = 5 everywhere; D0 = 5 - 0 = 5; D1 = h - 0 = {4, 6} -> tau1 = 5
    // tau0 = 5 exactly; with distinct leaves tau1 could differ, here both are 5
    XLearner learner(base.clone_unfitted(), 1.0);
    learner.fit(control, treatment);
    CHECK(learner.cate(std::vector<double>{0.5}) == 5.0);
    CHECK(learner.alpha_x() == 1.0);
}

TEST_CASE("x-learner default alpha_x is the treated ratio") {
    const Dataset control = make_dataset(
        Group::Control, {0, 0, 0, 0, 0, 0, 0, 0},
        {{0.0}, {0.1}, {0.2}, {0.3}, {0.4}, {0.5}, {0.6}, {0.7}});
    const Dataset treatment = make_dataset(Group::Treatment, {1, 1}, {{0.15}, {0.55}});
    XLearner learner(std::make_unique<Forest>(mean_base_config(8)));
    learner.fit(control, treatment);
    CHECK(learner.alpha_x() == doctest::Approx(2.0 / 10.0).epsilon(1e-15));
}

TEST_CASE("x-learner rejects undersized groups") {
    const Dataset control = make_dataset(Group::Control, {1.0}, {{0.0}});
    const Dataset treatment = make_dataset(Group::Treatment, {2, 2}, {{0.1}, {0.2}});
    CHECK_THROWS_AS(x_learner_cate(control, treatment,
                                   Forest(mean_base_config(1)), std::nullopt,
                                   std::vector<double>{0.0}),
                    std::invalid_argument);
}

TEST_CASE("learner serialization round trips") {
    RngStream rng(55);
    std::vector<std::vector<double>> rows;
    std::vector<double> yc, yt;
    for (int i = 0; i < 12; ++i) {
        rows.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1)});
        yc.push_back(rng.uniform(0, 1));
        yt.push_back(rng.uniform(2, 3));
    }
    const Dataset control = make_dataset(Group::Control, yc, rows);
    const Dataset treatment = make_dataset(Group::Treatment, yt, rows);

    ForestConfig cfg;
    cfg.n_trees = 3;
    cfg.max_depth = 3;
    cfg.seed = 2;
    const std::vector<double> q{0.3, -0.3};

    XLearner x(std::make_unique<Forest>(cfg));
    x.fit(control, treatment);
    const XLearner x2 = XLearner::from_json(x.to_json());
    CHECK(x2.cate(q) == x.cate(q));

    SLearner s(std::make_unique<GaussianNw>(0.7));
    s.fit(control, treatment);
    const SLearner s2 = SLearner::from_json(s.to_json());
    CHECK(s2.cate(q) == s.cate(q));

    TLearner t(std::make_unique<Forest>(cfg));
    t.fit(control, treatment);
    const TLearner t2 = TLearner::from_json(t.to_json());
    CHECK(t2.cate(q) == t.cate(q));
    CHECK(t2.predict_g0(q) == t.predict_g0(q));
}
