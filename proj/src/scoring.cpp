#include "vwsd/scoring.hpp"

#include <algorithm>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "vwsd/error.hpp"

namespace vwsd {

SimTable build_sim_table(const Instance& instance,
                         const std::vector<std::string>& glosses,
                         const SimilarityScorer& scorer) {
  const std::string& context = instance.effective_context();
  SimTable table;
  table.image_context.reserve(instance.candidates.size());
  for (const auto& image : instance.candidates) {
    table.image_context.push_back(scorer.sim_vl(image, context));
  }
  table.context_gloss.reserve(glosses.size());
  for (const auto& gloss : glosses) {
    table.context_gloss.push_back(scorer.sim_l(context, gloss));
  }
  table.image_gloss.resize(instance.candidates.size());
  for (size_t i = 0; i < instance.candidates.size(); ++i) {
    table.image_gloss[i].reserve(glosses.size());
    for (const auto& gloss : glosses) {
      table.image_gloss[i].push_back(scorer.sim_vl(instance.candidates[i], gloss));
    }
  }
  return table;
}

ScoreBreakdown score_from_table(const SimTable& table,
                                const std::vector<std::string>& glosses,
                                const Weights& weights) {
  ScoreBreakdown breakdown;
  breakdown.gloss_fallback = glosses.empty();
  breakdown.candidates.resize(table.image_context.size());
  for (size_t i = 0; i < table.image_context.size(); ++i) {
    CandidateScore& score = breakdown.candidates[i];
    score.s_ic = table.image_context[i];
    double gloss_term = 0.0;
    if (!glosses.empty()) {
      size_t best = 0;
      double best_value = weights.ig * table.image_gloss[i][0] +
                          weights.cg * table.context_gloss[0];
      for (size_t g = 1; g < glosses.size(); ++g) {
        const double value = weights.ig * table.image_gloss[i][g] +
                             weights.cg * table.context_gloss[g];
        if (value > best_value) {
          best_value = value;
          best = g;
        }
      }
      score.best_gloss = glosses[best];
      score.s_ig = table.image_gloss[i][best];
      score.s_cg = table.context_gloss[best];
      gloss_term = best_value;
    }
    score.total = gloss_term + weights.ic * score.s_ic;
  }
  return breakdown;
}

ScoreBreakdown score_instance(const Instance& instance,
                              const std::vector<std::string>& glosses,
                              const Weights& weights, const SimilarityScorer& scorer) {
  validate_weights(weights);
  return score_from_table(build_sim_table(instance, glosses, scorer), glosses, weights);
}

std::vector<int> rank_order(const std::vector<double>& totals) {
  std::vector<int> order(totals.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (totals[a] != totals[b]) return totals[a] > totals[b];
    return a < b;
  });
  return order;
}

int Prediction::gold_rank() const {
  if (gold_index < 0) {
    fail(ErrorKind::Integrity, "prediction has no gold candidate");
  }
  for (size_t r = 0; r < ranking.size(); ++r) {
    if (ranking[r] == gold_index) return static_cast<int>(r) + 1;
  }
  fail(ErrorKind::Integrity, "gold candidate absent from ranking");
}

Prediction make_prediction(size_t instance_index, const Instance& instance,
                           const std::vector<double>& totals) {
  if (totals.size() != instance.candidates.size()) {
    fail(ErrorKind::Shape, "totals size does not match candidate count");
  }
  Prediction prediction;
  prediction.instance_index = instance_index;
  prediction.totals = totals;
  prediction.ranking = rank_order(totals);
  prediction.gold_index = instance.gold_index();
  return prediction;
}

Prediction rank_instance(size_t instance_index, const Instance& instance,
                         const std::vector<std::string>& glosses,
                         const Weights& weights, const SimilarityScorer& scorer) {
  const ScoreBreakdown breakdown = score_instance(instance, glosses, weights, scorer);
  std::vector<double> totals;
  totals.reserve(breakdown.candidates.size());
  for (const auto& c : breakdown.candidates) totals.push_back(c.total);
  return make_prediction(instance_index, instance, totals);
}

void prefetch_embeddings(const std::vector<Instance>& instances,
                         const SenseInventory* inventory,
                         const SimilarityScorer& scorer) {
  std::vector<EmbedItem> vl_items;
  std::vector<EmbedItem> l_items;
  for (const auto& instance : instances) {
    const std::string& context = instance.effective_context();
    vl_items.push_back({Modality::Text, context});
    l_items.push_back({Modality::Text, context});
    for (const auto& image : instance.candidates) {
      vl_items.push_back({Modality::Image, image});
    }
    if (inventory) {
      for (const auto& gloss : inventory->select_glosses(instance.focus_word)) {
        vl_items.push_back({Modality::Text, gloss});
        l_items.push_back({Modality::Text, gloss});
      }
    }
  }
  Provider& provider = scorer.provider();
  provider.fetch(scorer.vl_model(), vl_items);
  provider.fetch(scorer.l_model(), l_items);
}

std::vector<Prediction> rank_batch(const std::vector<Instance>& instances,
                                   const SenseInventory* inventory,
                                   const Weights& weights,
                                   const SimilarityScorer& scorer, int jobs,
                                   BatchCounters* counters) {
  validate_weights(weights);
  prefetch_embeddings(instances, inventory, scorer);

  std::vector<std::vector<std::string>> glosses(instances.size());
  for (size_t i = 0; i < instances.size(); ++i) {
    if (inventory) glosses[i] = inventory->select_glosses(instances[i].focus_word);
  }

  std::vector<Prediction> predictions(instances.size());
  std::exception_ptr first_error;
  const int n = static_cast<int>(instances.size());
#ifdef _OPENMP
  const int workers = jobs > 0 ? jobs : omp_get_max_threads();
#else
  const int workers = 1;
  (void)jobs;
#endif
#pragma omp parallel for schedule(static) num_threads(workers)
  for (int i = 0; i < n; ++i) {
    try {
      predictions[i] = rank_instance(static_cast<size_t>(i), instances[i], glosses[i],
                                     weights, scorer);
    } catch (...) {
#pragma omp critical
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);

  if (counters) {
    for (const auto& g : glosses) {
      if (g.empty()) ++counters->gloss_fallbacks;
    }
  }
  return predictions;
}

}  // namespace vwsd
