#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "vwsd/scoring.hpp"
#include "vwsd/types.hpp"

namespace vwsd {

// Mean mask values produced by an external text-conditioned segmenter,
// keyed by (instance index, candidate id).
using MaskTable = std::map<std::pair<size_t, std::string>, double>;

// TSV columns: instance index, candidate id, mean mask value.
MaskTable load_mask_values(const std::filesystem::path& path);

// Picks the candidate with the highest mean mask value; exact ties keep the
// earliest candidate. Every candidate needs a value in [0, 1].
Prediction seg_select(size_t instance_index, const Instance& instance,
                      const std::map<std::string, double>& mask_values);

Prediction seg_select_from_table(size_t instance_index, const Instance& instance,
                                 const MaskTable& table);

}  // namespace vwsd
