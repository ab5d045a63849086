#include "vwsd/testkit/naive.hpp"

namespace vwsd::testkit {

ScoreBreakdown naive_score_instance(const Instance& instance,
                                    const std::vector<std::string>& glosses,
                                    const Weights& weights,
                                    const SimilarityScorer& scorer) {
  const std::string& context = instance.effective_context();
  ScoreBreakdown breakdown;
  breakdown.gloss_fallback = glosses.empty();
  for (const auto& image : instance.candidates) {
    CandidateScore score;
    score.s_ic = scorer.sim_vl(image, context);
    double gloss_term = 0.0;
    if (!glosses.empty()) {
      bool have_best = false;
      double best_value = 0.0;
      for (const auto& gloss : glosses) {
        const double s_ig = scorer.sim_vl(image, gloss);
        const double s_cg = scorer.sim_l(context, gloss);
        const double value = weights.ig * s_ig + weights.cg * s_cg;
        if (!have_best || value > best_value) {
          have_best = true;
          best_value = value;
          score.best_gloss = gloss;
          score.s_ig = s_ig;
          score.s_cg = s_cg;
        }
      }
      gloss_term = best_value;
    }
    score.total = gloss_term + weights.ic * score.s_ic;
    breakdown.candidates.push_back(std::move(score));
  }
  return breakdown;
}

std::vector<int> naive_rank(const std::vector<double>& totals) {
  std::vector<int> order;
  std::vector<bool> used(totals.size(), false);
  for (size_t round = 0; round < totals.size(); ++round) {
    int best = -1;
    for (size_t i = 0; i < totals.size(); ++i) {
      if (used[i]) continue;
      if (best < 0 || totals[i] > totals[best]) best = static_cast<int>(i);
    }
    used[best] = true;
    order.push_back(best);
  }
  return order;
}

}  // namespace vwsd::testkit
