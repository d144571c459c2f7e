#pragma once
// Variance-reduction regression trees and a bootstrap-averaged forest.
// Split candidates are midpoints between consecutive sorted unique feature
// values; ties break toward the lowest feature index, then lowest threshold.

#include "tnw/baselines/regressor.hpp"
#include "tnw/rng.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace tnw::baselines {

struct TreeNode {
    int feature = -1; // -1: leaf
    double threshold = 0.0;
    std::unique_ptr<TreeNode> left;
    std::unique_ptr<TreeNode> right;
    double value = 0.0; // leaf mean
    std::size_t count = 0;

    bool is_leaf() const { return feature < 0; }
};

// Absolute leaf count, or a fraction of the fit's training size.
struct MinLeaf {
    double value = 1.0;
    bool fraction = false;

    std::size_t resolve(std::size_t training_rows) const;
};

struct ForestConfig {
    std::size_t n_trees = 100;
    std::size_t max_depth = 5;
    MinLeaf min_leaf;
    bool bootstrap = true;
    std::uint64_t seed = 0;
};

std::unique_ptr<TreeNode> fit_tree(const Matrix& features, std::span<const double> outcomes,
                                   std::size_t max_depth, std::size_t min_leaf_count);

// Same, restricted to a row bag (duplicates allowed, as bootstrap produces).
std::unique_ptr<TreeNode> fit_tree_rows(const Matrix& features,
                                        std::span<const double> outcomes,
                                        std::span<const std::uint32_t> rows,
                                        std::size_t max_depth, std::size_t min_leaf_count);

double tree_predict(const TreeNode& node, std::span<const double> query);

nlohmann::json tree_to_json(const TreeNode& node);
std::unique_ptr<TreeNode> tree_from_json(const nlohmann::json& j);

class Forest final : public Regressor {
public:
    explicit Forest(ForestConfig config);

    void fit(const Matrix& features, std::span<const double> outcomes) override;
    double predict(std::span<const double> query) const override;
    std::unique_ptr<Regressor> clone_unfitted() const override;
    nlohmann::json to_json() const override;
    static Forest from_json(const nlohmann::json& j);

    const ForestConfig& config() const { return config_; }
    const std::vector<std::unique_ptr<TreeNode>>& trees() const { return trees_; }

private:
    ForestConfig config_;
    std::vector<std::unique_ptr<TreeNode>> trees_;
};

} // namespace tnw::baselines
