#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "vwsd/types.hpp"

namespace vwsd {

// One record of the synset-to-images resource (JSON lines).
struct ImageMapping {
  std::string synset_id;
  std::vector<std::string> image_ids;  // nonempty
  std::vector<std::string> lemmas;     // nonempty
  std::vector<std::pair<std::string, std::string>> related;  // (synset id, lemma)
};

std::vector<ImageMapping> load_image_mappings(const std::filesystem::path& path);

// Builds silver training instances: for each (synset, image) pair, a
// two-word context "<related lemma> <base lemma>" with the base lemma as the
// focus word, the image as gold, and nine distinct distractors sampled
// uniformly from other synsets' images. Gold position is a seeded draw.
// Synsets without related entries cannot form a context and are skipped with
// a warning.
Dataset build_supplementary(const std::vector<ImageMapping>& resource,
                            int per_pair_distractors, uint64_t seed,
                            std::vector<std::string>* warnings = nullptr);

}  // namespace vwsd
