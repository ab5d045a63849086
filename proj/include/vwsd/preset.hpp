#pragma once

#include <optional>
#include <string>

#include "vwsd/config.hpp"
#include "vwsd/types.hpp"

namespace vwsd {

enum class Strategy { Algorithm, Generative, Segmentation };

const char* to_string(Strategy strategy);

// A system preset resolved for one concrete language.
struct ResolvedSystem {
  Strategy strategy = Strategy::Algorithm;
  bool translate = false;  // translate non-English contexts to English first
  bool augment = false;    // Def context augmentation
  // Absent for Gen/Seg, which ignore the weight triple.
  std::optional<Weights> weights;
  ModelPair models;
};

// Preset contracts: Tr translates and weights (1,1,1); Tr+Def weights
// (1,0,0); LangSpec uses the language's own encoders and refuses Def;
// Gen/Seg run their strategies with weights recorded absent.
ResolvedSystem resolve_preset(SystemId system, const std::string& language,
                              const SystemConfig& config);

}  // namespace vwsd
