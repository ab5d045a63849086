#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"
#include "vwsd/types.hpp"

namespace vwsd {

// The seven selectable systems. Def is context augmentation layered on top
// of a base strategy; LangSpec refuses it.
enum class SystemId { Tr, TrDef, LangSpec, Gen, GenDef, Seg, SegDef };

SystemId parse_system(const std::string& name);  // tr | tr-def | langspec | ...
const char* to_string(SystemId system);
bool def_enabled(SystemId system);

enum class BaseSystem { Tr, LangSpec, Gen, Seg };
BaseSystem base_system(SystemId system);

enum class GenAggregation { Mean, Max };

struct ModelPair {
  std::string vl;  // shared vision-language encoder id
  std::string l;   // text-only encoder id
};

struct SystemConfig {
  SystemId system = SystemId::Tr;
  // Explicit weight override; presets fill in defaults when absent.
  std::optional<Weights> weights;
  std::map<std::string, ModelPair> models;  // language code -> encoders

  int gen_count = 15;
  // Passed through to the external generator as metadata; no local effect.
  int gen_steps = 20;
  double gen_guidance = 7.5;
  GenAggregation gen_aggregation = GenAggregation::Mean;

  uint64_t seed = 0;
  int jobs = 0;        // 0 = all available workers
  int batch_size = 20; // texts per generation/embedding request
  int retries = 3;
  // Max text length in bytes fed to encoders; 0 = unlimited. Truncations are
  // counted and surfaced in the report.
  size_t max_input_len = 0;
  uint32_t mock_dim = 64;
  bool mock = false;

  std::filesystem::path store_path;
  std::filesystem::path gen_store_path;
  std::filesystem::path augment_cache_path;
  std::filesystem::path translate_cache_path;
  std::filesystem::path inventory_path;
  std::filesystem::path masks_path;
  std::filesystem::path image_root;

  std::string embed_endpoint;
  std::string generate_endpoint;
  std::string translate_endpoint;
};

// Registry entries assumed when the config names none.
std::map<std::string, ModelPair> default_model_registry();

SystemConfig load_config(const std::filesystem::path& path);
SystemConfig config_from_kv(const std::string& content, const std::string& origin);

// Cross-field checks shared by file load and flag overrides.
void validate_config(const SystemConfig& config);

// The portion of the config echoed into reports: everything that affects
// results. Weights are reported absent for Gen/Seg, which ignore them.
nlohmann::json config_echo(const SystemConfig& config);

}  // namespace vwsd
