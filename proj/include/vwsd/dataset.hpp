#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vwsd/types.hpp"

namespace vwsd {

// Loads the tab-separated release format: one instance per line with exactly
// 12 fields (focus word, context, ten image ids). The optional gold file has
// one image id per line, aligned by line index.
Dataset load_dataset(const std::filesystem::path& data_path,
                     const std::optional<std::filesystem::path>& gold_path,
                     const std::string& language);

// Inverse of load_dataset; field values round-trip byte-for-byte.
void save_dataset(const Dataset& dataset, const std::filesystem::path& data_path,
                  const std::optional<std::filesystem::path>& gold_path);

struct DevSplit {
  Dataset train;
  Dataset dev;
};

// Deterministic disjoint partition; |dev| = round(fraction * N), clamped into
// [1, N-1] with a warning. Instance order within each part follows the input.
DevSplit split_dev(const Dataset& dataset, double fraction, uint64_t seed,
                   std::vector<std::string>* warnings = nullptr);

// One dataset entry of a run manifest.
struct DatasetRef {
  std::string name;
  std::string language;
  Split split = Split::Test;
  std::filesystem::path data;
  std::optional<std::filesystem::path> gold;
};

// Manifest format: "key = value" lines, one dataset per block, blocks
// separated by blank lines. Relative paths resolve against the manifest file.
std::vector<DatasetRef> load_dataset_manifest(const std::filesystem::path& path);

void save_dataset_manifest(const std::vector<DatasetRef>& refs,
                           const std::filesystem::path& path);

}  // namespace vwsd
