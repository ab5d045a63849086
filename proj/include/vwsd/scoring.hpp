#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vwsd/inventory.hpp"
#include "vwsd/provider.hpp"
#include "vwsd/types.hpp"

namespace vwsd {

struct CandidateScore {
  double total = 0.0;
  double s_ic = 0.0;  // image-context similarity, unweighted
  double s_ig = 0.0;  // image-gloss similarity of the winning gloss
  double s_cg = 0.0;  // context-gloss similarity of the winning gloss
  std::optional<std::string> best_gloss;
};

struct ScoreBreakdown {
  std::vector<CandidateScore> candidates;
  // True when the gloss set was empty and scoring fell back to pure
  // image-context similarity.
  bool gloss_fallback = false;
};

// Pairwise similarities for one instance, computed once and combinable under
// any weight setting (grid search reuses one table across all seven configs).
struct SimTable {
  std::vector<double> image_context;               // [candidate]
  std::vector<double> context_gloss;               // [gloss]; candidate-independent
  std::vector<std::vector<double>> image_gloss;    // [candidate][gloss]
};

SimTable build_sim_table(const Instance& instance,
                         const std::vector<std::string>& glosses,
                         const SimilarityScorer& scorer);

// Weight combination: per candidate, the winning gloss maximizes
// w_ig * s_ig + w_cg * s_cg; the total adds w_ic * s_ic. Gloss ties keep the
// earliest gloss. An empty gloss set contributes zero.
ScoreBreakdown score_from_table(const SimTable& table,
                                const std::vector<std::string>& glosses,
                                const Weights& weights);

ScoreBreakdown score_instance(const Instance& instance,
                              const std::vector<std::string>& glosses,
                              const Weights& weights, const SimilarityScorer& scorer);

struct Prediction {
  size_t instance_index = 0;
  std::vector<int> ranking;    // candidate indices, best first
  std::vector<double> totals;  // by original candidate index
  int gold_index = -1;         // original candidate index of gold, -1 if absent

  int chosen() const { return ranking.front(); }
  bool has_gold() const { return gold_index >= 0; }
  // 1-based rank of the gold candidate; throws Integrity when gold is absent.
  int gold_rank() const;
};

// Descending by total; exact ties keep ascending original candidate order.
std::vector<int> rank_order(const std::vector<double>& totals);

Prediction make_prediction(size_t instance_index, const Instance& instance,
                           const std::vector<double>& totals);

Prediction rank_instance(size_t instance_index, const Instance& instance,
                         const std::vector<std::string>& glosses,
                         const Weights& weights, const SimilarityScorer& scorer);

struct BatchCounters {
  size_t gloss_fallbacks = 0;
};

// Scores a whole instance list. Embeddings are prefetched serially through
// the provider (one batch per model/modality), then instances are scored in
// parallel; results land in input order regardless of the worker count.
std::vector<Prediction> rank_batch(const std::vector<Instance>& instances,
                                   const SenseInventory* inventory,
                                   const Weights& weights,
                                   const SimilarityScorer& scorer, int jobs,
                                   BatchCounters* counters = nullptr);

// Prefetches every embedding rank_batch will need: contexts and glosses
// under both encoders, candidate images under the vision-language encoder.
void prefetch_embeddings(const std::vector<Instance>& instances,
                         const SenseInventory* inventory,
                         const SimilarityScorer& scorer);

}  // namespace vwsd
