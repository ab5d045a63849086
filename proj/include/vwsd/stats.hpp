#pragma once

#include <optional>

#include "vwsd/inventory.hpp"
#include "vwsd/types.hpp"

#include "json.hpp"

namespace vwsd {

struct DatasetStats {
  size_t n = 0;
  size_t covered = 0;       // instances whose focus word the inventory knows
  double coverage = 0.0;    // covered / n
  // Mean sense count over covered instances; absent at zero coverage.
  std::optional<double> mean_polysemy;
  // Fraction of covered instances whose focus word's first sense is a noun.
  std::optional<double> noun_fraction;
};

DatasetStats dataset_stats(const Dataset& dataset, const SenseInventory& inventory);

nlohmann::json stats_to_json(const DatasetStats& stats);

}  // namespace vwsd
