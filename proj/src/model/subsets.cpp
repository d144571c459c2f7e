#include "tnw/model/subsets.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace tnw::model {

std::vector<SubsetExample> sample_subsets(std::size_t rows, std::size_t per_example,
                                          std::size_t subset_size, data::Group group,
                                          RngStream& rng) {
    if (rows < 2)
        throw std::invalid_argument("sample_subsets: need at least 2 rows");
    if (per_example < 1)
        throw std::invalid_argument("sample_subsets: per_example must be at least 1");
    if (subset_size < 1 || subset_size > rows - 1)
        throw std::invalid_argument("sample_subsets: subset_size " +
                                    std::to_string(subset_size) + " not in [1, " +
                                    std::to_string(rows - 1) + "]");

    std::vector<SubsetExample> examples;
    examples.reserve(rows * per_example);
    std::vector<std::uint32_t> pool(rows - 1);
    for (std::size_t target = 0; target < rows; ++target) {
        // pool = all rows except the target
        std::uint32_t v = 0;
        for (std::size_t k = 0; k < rows - 1; ++k, ++v) {
            if (v == target)
                ++v;
            pool[k] = v;
        }
        for (std::size_t r = 0; r < per_example; ++r) {
            SubsetExample ex;
            ex.target = static_cast<std::uint32_t>(target);
            ex.group = group;
            ex.neighbors.resize(subset_size);
            // partial Fisher-Yates over the pool
            for (std::size_t k = 0; k < subset_size; ++k) {
                const std::size_t j = k + rng.below(pool.size() - k);
                std::swap(pool[k], pool[j]);
                ex.neighbors[k] = pool[k];
            }
            examples.push_back(std::move(ex));
        }
    }
    return examples;
}

} // namespace tnw::model
