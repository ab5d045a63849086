#include "vwsd/types.hpp"

#include <cmath>
#include <unordered_set>

#include "vwsd/error.hpp"
#include "vwsd/util.hpp"

namespace vwsd {

const char* to_string(Modality modality) {
  return modality == Modality::Text ? "text" : "image";
}

Modality parse_modality(const std::string& name) {
  if (name == "text") return Modality::Text;
  if (name == "image") return Modality::Image;
  fail(ErrorKind::Parse, "unknown modality: " + name);
}

const char* to_string(Split split) {
  switch (split) {
    case Split::Train: return "train";
    case Split::Dev: return "dev";
    case Split::Test: return "test";
  }
  return "train";
}

Split parse_split(const std::string& name) {
  if (name == "train") return Split::Train;
  if (name == "dev") return Split::Dev;
  if (name == "test") return Split::Test;
  fail(ErrorKind::Parse, "unknown split: " + name);
}

int Instance::gold_index() const {
  if (!gold) return -1;
  for (size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i] == *gold) return static_cast<int>(i);
  }
  return -1;
}

void validate_instance(const Instance& instance) {
  if (instance.candidates.size() != kCandidateCount) {
    fail(ErrorKind::Validation,
         "instance must have exactly " + std::to_string(kCandidateCount) +
             " candidates, got " + std::to_string(instance.candidates.size()));
  }
  std::unordered_set<std::string> seen;
  for (const auto& id : instance.candidates) {
    if (id.empty()) fail(ErrorKind::Validation, "empty candidate image id");
    if (!seen.insert(id).second) {
      fail(ErrorKind::Validation, "duplicate candidate image id: " + id);
    }
  }
  if (instance.gold && instance.gold_index() < 0) {
    fail(ErrorKind::Integrity,
         "gold id '" + *instance.gold + "' is not among the candidates");
  }
  if (instance.focus_word.empty()) fail(ErrorKind::Validation, "empty focus word");
  if (!instance.focus_not_in_context &&
      !contains_ci(instance.context, instance.focus_word)) {
    fail(ErrorKind::Validation,
         "focus word '" + instance.focus_word + "' not found in context '" +
             instance.context + "' and instance is not flagged");
  }
}

void refresh_focus_flag(Instance& instance) {
  instance.focus_not_in_context = !contains_ci(instance.context, instance.focus_word);
}

void validate_weights(const Weights& weights) {
  for (double w : {weights.ic, weights.ig, weights.cg}) {
    if (!std::isfinite(w)) fail(ErrorKind::Config, "weights must be finite");
    if (w < 0.0) fail(ErrorKind::Config, "weights must be non-negative");
  }
  if (weights.ic == 0.0 && weights.ig == 0.0 && weights.cg == 0.0) {
    fail(ErrorKind::Config, "weights must not all be zero");
  }
}

}  // namespace vwsd
