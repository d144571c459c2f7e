#include "tnw/baselines/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tnw::baselines {

std::size_t MinLeaf::resolve(std::size_t training_rows) const {
    if (fraction) {
        if (!(value > 0.0 && value < 1.0))
            throw std::invalid_argument("MinLeaf: fraction must lie in (0, 1)");
        return static_cast<std::size_t>(
            std::ceil(value * static_cast<double>(training_rows)));
    }
    if (value < 1.0 || value != std::floor(value))
        throw std::invalid_argument("MinLeaf: absolute count must be a positive integer");
    return static_cast<std::size_t>(value);
}

namespace {

struct SplitChoice {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double gain = 0.0;
};

struct TreeBuilder {
    const Matrix& x;
    std::span<const double> y;
    std::size_t max_depth;
    std::size_t min_leaf;

    // scratch reused across nodes
    std::vector<std::uint32_t> sorted;
    std::vector<double> prefix_y;
    std::vector<double> prefix_yy;

    std::unique_ptr<TreeNode> build(std::vector<std::uint32_t>& rows, std::size_t depth) {
        auto node = std::make_unique<TreeNode>();
        node->count = rows.size();

        double sum = 0.0;
        double lo = y[rows[0]], hi = y[rows[0]];
        for (std::uint32_t r : rows) {
            sum += y[r];
            lo = std::min(lo, y[r]);
            hi = std::max(hi, y[r]);
        }
        node->value = sum / static_cast<double>(rows.size());

        if (depth >= max_depth || rows.size() < 2 * min_leaf || lo == hi)
            return node;

        const SplitChoice split = best_split(rows, sum);
        if (!split.found)
            return node;

        std::vector<std::uint32_t> left_rows, right_rows;
        left_rows.reserve(rows.size());
        right_rows.reserve(rows.size());
        for (std::uint32_t r : rows)
            (x(r, static_cast<std::size_t>(split.feature)) < split.threshold ? left_rows
                                                                             : right_rows)
                .push_back(r);
        rows.clear();
        rows.shrink_to_fit();

        node->feature = split.feature;
        node->threshold = split.threshold;
        node->left = build(left_rows, depth + 1);
        node->right = build(right_rows, depth + 1);
        return node;
    }

    SplitChoice best_split(const std::vector<std::uint32_t>& rows, double sum) {
        const std::size_t n = rows.size();
        double sum_sq = 0.0;
        for (std::uint32_t r : rows)
            sum_sq += y[r] * y[r];
        const double parent_sse = sum_sq - sum * sum / static_cast<double>(n);

        SplitChoice best;
        sorted.assign(rows.begin(), rows.end());
        prefix_y.resize(n + 1);
        prefix_yy.resize(n + 1);
        for (std::size_t f = 0; f < x.cols(); ++f) {
            std::sort(sorted.begin(), sorted.end(), [&](std::uint32_t a, std::uint32_t b) {
                return x(a, f) < x(b, f);
            });
            prefix_y[0] = prefix_yy[0] = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                prefix_y[i + 1] = prefix_y[i] + y[sorted[i]];
                prefix_yy[i + 1] = prefix_yy[i] + y[sorted[i]] * y[sorted[i]];
            }
            for (std::size_t k = min_leaf; k + min_leaf <= n; ++k) {
                const double a = x(sorted[k - 1], f);
                const double b = x(sorted[k], f);
                if (!(a < b))
                    continue;
                const double mid = 0.5 * (a + b);
                if (!(a < mid) || !(mid <= b))
                    continue; // adjacent representables, no splittable gap
                const double ls = prefix_y[k];
                const double lss = prefix_yy[k];
                const double rs = sum - ls;
                const double rss = sum_sq - lss;
                const double left_sse = lss - ls * ls / static_cast<double>(k);
                const double right_sse = rss - rs * rs / static_cast<double>(n - k);
                const double gain = parent_sse - left_sse - right_sse;
                if (gain > best.gain) {
                    best.found = true;
                    best.feature = static_cast<int>(f);
                    best.threshold = mid;
                    best.gain = gain;
                }
            }
        }
        return best; // best.gain > 0 by construction, zero-gain splits stay leaves
    }
};

} // namespace

std::unique_ptr<TreeNode> fit_tree_rows(const Matrix& features,
                                        std::span<const double> outcomes,
                                        std::span<const std::uint32_t> rows,
                                        std::size_t max_depth, std::size_t min_leaf_count) {
    if (rows.empty())
        throw std::invalid_argument("fit_tree: empty training set");
    if (max_depth < 1)
        throw std::invalid_argument("fit_tree: max_depth must be at least 1");
    if (min_leaf_count < 1)
        throw std::invalid_argument("fit_tree: min_leaf must be at least 1");
    TreeBuilder builder{features, outcomes, max_depth, min_leaf_count, {}, {}, {}};
    std::vector<std::uint32_t> all(rows.begin(), rows.end());
    return builder.build(all, 0);
}

std::unique_ptr<TreeNode> fit_tree(const Matrix& features, std::span<const double> outcomes,
                                   std::size_t max_depth, std::size_t min_leaf_count) {
    if (features.rows() != outcomes.size())
        throw std::invalid_argument("fit_tree: row counts disagree");
    std::vector<std::uint32_t> rows(features.rows());
    std::iota(rows.begin(), rows.end(), 0u);
    return fit_tree_rows(features, outcomes, rows, max_depth, min_leaf_count);
}

double tree_predict(const TreeNode& node, std::span<const double> query) {
    const TreeNode* cur = &node;
    while (!cur->is_leaf())
        cur = query[static_cast<std::size_t>(cur->feature)] < cur->threshold
                  ? cur->left.get()
                  : cur->right.get();
    return cur->value;
}

nlohmann::json tree_to_json(const TreeNode& node) {
    nlohmann::json j;
    if (node.is_leaf()) {
        j["value"] = node.value;
        j["count"] = node.count;
    } else {
        j["feature"] = node.feature;
        j["threshold"] = node.threshold;
        j["left"] = tree_to_json(*node.left);
        j["right"] = tree_to_json(*node.right);
    }
    return j;
}

std::unique_ptr<TreeNode> tree_from_json(const nlohmann::json& j) {
    auto node = std::make_unique<TreeNode>();
    if (j.contains("feature")) {
        node->feature = j.at("feature").get<int>();
        node->threshold = j.at("threshold").get<double>();
        node->left = tree_from_json(j.at("left"));
        node->right = tree_from_json(j.at("right"));
    } else {
        node->value = j.at("value").get<double>();
        node->count = j.at("count").get<std::size_t>();
    }
    return node;
}

Forest::Forest(ForestConfig config) : config_(config) {
    if (config_.n_trees < 1)
        throw std::invalid_argument("Forest: n_trees must be at least 1");
    if (config_.max_depth < 1)
        throw std::invalid_argument("Forest: max_depth must be at least 1");
}

void Forest::fit(const Matrix& features, std::span<const double> outcomes) {
    if (features.rows() != outcomes.size())
        throw std::invalid_argument("Forest::fit: row counts disagree");
    if (features.rows() == 0)
        throw std::invalid_argument("Forest::fit: empty training set");

    const std::size_t n = features.rows();
    const std::size_t min_leaf = config_.min_leaf.resolve(n);
    trees_.clear();
    trees_.reserve(config_.n_trees);
    std::vector<std::uint32_t> bag(n);
    for (std::size_t i = 0; i < config_.n_trees; ++i) {
        if (config_.bootstrap) {
            RngStream rng(derive_seed(config_.seed, {hash_tag("tree"), i}));
            for (std::uint32_t& r : bag)
                r = static_cast<std::uint32_t>(rng.below(n));
        } else {
            std::iota(bag.begin(), bag.end(), 0u);
        }
        trees_.push_back(fit_tree_rows(features, outcomes, bag, config_.max_depth, min_leaf));
    }
}

double Forest::predict(std::span<const double> query) const {
    if (trees_.empty())
        throw std::logic_error("Forest: predict before fit");
    double sum = 0.0;
    for (const auto& tree : trees_)
        sum += tree_predict(*tree, query);
    return sum / static_cast<double>(trees_.size());
}

std::unique_ptr<Regressor> Forest::clone_unfitted() const {
    return std::make_unique<Forest>(config_);
}

nlohmann::json Forest::to_json() const {
    nlohmann::json j;
    j["type"] = "forest";
    j["n_trees"] = config_.n_trees;
    j["max_depth"] = config_.max_depth;
    j["min_leaf_value"] = config_.min_leaf.value;
    j["min_leaf_fraction"] = config_.min_leaf.fraction;
    j["bootstrap"] = config_.bootstrap;
    j["seed"] = config_.seed;
    nlohmann::json trees = nlohmann::json::array();
    for (const auto& t : trees_)
        trees.push_back(tree_to_json(*t));
    j["trees"] = std::move(trees);
    return j;
}

Forest Forest::from_json(const nlohmann::json& j) {
    ForestConfig cfg;
    cfg.n_trees = j.at("n_trees").get<std::size_t>();
    cfg.max_depth = j.at("max_depth").get<std::size_t>();
    cfg.min_leaf.value = j.at("min_leaf_value").get<double>();
    cfg.min_leaf.fraction = j.at("min_leaf_fraction").get<bool>();
    cfg.bootstrap = j.at("bootstrap").get<bool>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    Forest forest(cfg);
    for (const auto& t : j.at("trees"))
        forest.trees_.push_back(tree_from_json(t));
    return forest;
}

} // namespace tnw::baselines
