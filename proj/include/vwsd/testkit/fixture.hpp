#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>

#include "vwsd/dataset.hpp"
#include "vwsd/inventory.hpp"
#include "vwsd/store.hpp"
#include "vwsd/types.hpp"

namespace vwsd::testkit {

// Where the recoverable signal lives in a generated fixture.
enum class PlantMode {
  ImageContext,  // gold is the unique argmax of image-context cosine
  ImageGloss,    // gold matches the correct sense's gloss embedding
  Noise,         // nothing planted; chance-level at 1/10
};

struct FixtureOptions {
  uint32_t dim = 64;
  std::string vl_model = "mock-vl";
  std::string l_model = "mock-l";
  // Empty: memory-only store.
  std::filesystem::path store_path;
};

struct Fixture {
  Dataset dataset;
  std::shared_ptr<EmbeddingStore> store;
  SenseInventory inventory;
  std::string vl_model;
  std::string l_model;
};

// Deterministic synthetic corpus: n instances with sense inventories and a
// fully populated embedding store. Planted modes verify their guarantee
// against the binarized weight grid during construction, resampling
// distractors when random noise would break it, so downstream assertions
// hold by construction rather than by luck.
Fixture make_fixture_dataset(size_t n, PlantMode mode, uint64_t seed,
                             FixtureOptions options = {});

// Writes data.tsv, gold.txt, inventory.json, and manifest.txt under dir.
// The store is written separately when options.store_path was set.
void write_fixture_files(const Fixture& fixture, const std::filesystem::path& dir);

}  // namespace vwsd::testkit
