#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vwsd {

// Every task instance carries exactly this many candidate images.
inline constexpr int kCandidateCount = 10;

enum class Modality : uint8_t { Text = 0, Image = 1 };

const char* to_string(Modality modality);
Modality parse_modality(const std::string& name);

enum class Split { Train, Dev, Test };

const char* to_string(Split split);
Split parse_split(const std::string& name);

// One disambiguation sample: a focus word inside a short context, ten
// candidate image ids, and optionally the gold id.
struct Instance {
  std::string focus_word;
  std::string context;
  std::optional<std::string> augmented_context;
  // Pre-translation context, kept for provenance when translation replaces
  // the surface form.
  std::optional<std::string> source_context;
  std::string language;
  std::vector<std::string> candidates;
  std::optional<std::string> gold;
  // Silver data is noisy; a focus word that does not occur in its context is
  // tolerated and flagged rather than rejected.
  bool focus_not_in_context = false;

  // Context the scorer should see: augmented when present, original otherwise.
  const std::string& effective_context() const {
    return augmented_context ? *augmented_context : context;
  }

  // Position of the gold id within candidates, -1 when gold is absent.
  int gold_index() const;
};

// Throws on violated invariants: exactly 10 unique candidates, gold among
// them, focus word in context unless flagged.
void validate_instance(const Instance& instance);

// Recomputes the focus-not-in-context flag (ASCII case-insensitive search).
void refresh_focus_flag(Instance& instance);

struct Weights {
  double ic = 1.0;
  double ig = 1.0;
  double cg = 1.0;
};

// Rejects non-finite or negative components and the all-zero triple.
void validate_weights(const Weights& weights);

struct Dataset {
  std::string name;
  std::string language;
  Split split = Split::Train;
  std::vector<Instance> instances;
};

}  // namespace vwsd
