#pragma once
// Training-example assembly: for every row, fixed-size neighbor subsets drawn
// without replacement from the rest of its group.

#include "tnw/data/dataset.hpp"
#include "tnw/rng.hpp"

#include <cstdint>
#include <vector>

namespace tnw::model {

struct SubsetExample {
    std::vector<std::uint32_t> neighbors; // distinct, never contains target
    std::uint32_t target = 0;
    data::Group group = data::Group::Control;
};

// Exactly rows * per_example examples; each target's neighbors are drawn
// uniformly without replacement from the other rows.
std::vector<SubsetExample> sample_subsets(std::size_t rows, std::size_t per_example,
                                          std::size_t subset_size, data::Group group,
                                          RngStream& rng);

} // namespace tnw::model
