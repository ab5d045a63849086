#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vwsd/inventory.hpp"
#include "vwsd/provider.hpp"
#include "vwsd/types.hpp"

namespace vwsd {

struct GridRow {
  Weights weights;
  double accuracy = 0.0;
};

// Binarized grid over the weight triple: all of {0,1}^3 except (0,0,0),
// exactly seven configurations. Similarity tables are built once per
// instance and recombined per configuration. Rows come back sorted by
// accuracy descending, ties by lexicographically descending weights.
std::vector<GridRow> grid_search(const Dataset& dataset,
                                 const SenseInventory* inventory,
                                 const SimilarityScorer& scorer, size_t sample_n,
                                 uint64_t seed, int jobs);

std::string grid_to_table(const std::vector<GridRow>& rows);
std::string grid_to_tsv(const std::vector<GridRow>& rows);

}  // namespace vwsd
