#include "vwsd/preset.hpp"

#include "vwsd/error.hpp"

namespace vwsd {

const char* to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::Algorithm: return "algorithm";
    case Strategy::Generative: return "generative";
    case Strategy::Segmentation: return "segmentation";
  }
  return "algorithm";
}

namespace {

ModelPair registry_lookup(const SystemConfig& config, const std::string& language) {
  const auto it = config.models.find(language);
  if (it == config.models.end()) {
    fail(ErrorKind::Config, "no model registry entry for language '" + language + "'");
  }
  return it->second;
}

}  // namespace

ResolvedSystem resolve_preset(SystemId system, const std::string& language,
                              const SystemConfig& config) {
  if (language.empty()) fail(ErrorKind::Config, "preset resolution requires a language");
  ResolvedSystem resolved;
  const bool def = def_enabled(system);
  switch (base_system(system)) {
    case BaseSystem::Tr: {
      resolved.strategy = Strategy::Algorithm;
      resolved.translate = true;
      resolved.augment = def;
      resolved.models = registry_lookup(config, "en");
      if (def) {
        // The augmented context obviates the gloss terms.
        Weights weights{config.weights ? config.weights->ic : 1.0, 0.0, 0.0};
        resolved.weights = weights;
      } else {
        resolved.weights = config.weights.value_or(Weights{1.0, 1.0, 1.0});
      }
      break;
    }
    case BaseSystem::LangSpec: {
      if (def) fail(ErrorKind::Unsupported, "Def cannot be combined with LangSpec");
      resolved.strategy = Strategy::Algorithm;
      resolved.translate = false;
      resolved.models = registry_lookup(config, language);
      resolved.weights = config.weights.value_or(Weights{1.0, 1.0, 1.0});
      break;
    }
    case BaseSystem::Gen: {
      resolved.strategy = Strategy::Generative;
      resolved.translate = true;
      resolved.augment = def;
      resolved.models = registry_lookup(config, "en");
      break;
    }
    case BaseSystem::Seg: {
      resolved.strategy = Strategy::Segmentation;
      resolved.translate = true;
      resolved.augment = def;
      resolved.models = registry_lookup(config, "en");
      break;
    }
  }
  if (resolved.weights) validate_weights(*resolved.weights);
  return resolved;
}

}  // namespace vwsd
