#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vwsd/augment.hpp"
#include "vwsd/config.hpp"
#include "vwsd/dataset.hpp"
#include "vwsd/inventory.hpp"
#include "vwsd/provider.hpp"
#include "vwsd/report.hpp"
#include "vwsd/seg.hpp"
#include "vwsd/textcache.hpp"

namespace vwsd {

// Everything a run needs, wired from the config: providers over the
// embedding stores, generation/translation services (HTTP, mock, or none),
// caches, inventory, and mask values.
struct RunServices {
  std::shared_ptr<EmbeddingStore> store;
  std::shared_ptr<EmbeddingStore> gen_store;
  std::shared_ptr<Provider> provider;
  std::shared_ptr<Provider> gen_provider;
  std::shared_ptr<GenerationService> generation;
  std::shared_ptr<TranslationService> translation;
  std::shared_ptr<TextCache> augment_cache;
  std::shared_ptr<TextCache> translate_cache;
  std::optional<SenseInventory> inventory;
  std::optional<MaskTable> masks;
};

RunServices make_services(const SystemConfig& config);

struct RunResult {
  EvalReport report;
  std::string report_table;
  std::filesystem::path predictions_path;
  std::filesystem::path report_path;
  std::filesystem::path manifest_path;
};

// Full pipeline: load datasets, translate/augment per the preset, score,
// evaluate, and write predictions.tsv, report.json, and run.manifest under
// out_dir. Outputs are removed again if any write fails. The config_origin
// string is echoed into the manifest.
RunResult run_pipeline(const SystemConfig& config, const std::vector<DatasetRef>& refs,
                       RunServices& services, const std::filesystem::path& out_dir,
                       const std::string& config_origin);

}  // namespace vwsd
