#include "vwsd/gen.hpp"

#include <algorithm>

#include "vwsd/error.hpp"
#include "vwsd/util.hpp"

namespace vwsd {

std::string gen_image_key(const std::string& context, int sample_index) {
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(fnv1a64(context)));
  return std::string("gen:") + buffer + "#" + std::to_string(sample_index);
}

ScoreBreakdown gen_score(const Instance& instance,
                         const std::vector<EmbeddingVector>& generated,
                         Provider& provider, const std::string& vl_model,
                         GenAggregation aggregation) {
  if (generated.empty()) {
    fail(ErrorKind::Config, "gen scoring requires at least one generated image");
  }
  ScoreBreakdown breakdown;
  breakdown.candidates.resize(instance.candidates.size());
  for (size_t i = 0; i < instance.candidates.size(); ++i) {
    const EmbeddingVector candidate =
        provider.get(vl_model, Modality::Image, instance.candidates[i]);
    double sum = 0.0;
    double max_value = -2.0;
    for (const auto& image : generated) {
      const double sim = cosine(candidate, image);
      sum += sim;
      max_value = std::max(max_value, sim);
    }
    breakdown.candidates[i].total = aggregation == GenAggregation::Mean
                                        ? sum / static_cast<double>(generated.size())
                                        : max_value;
  }
  return breakdown;
}

Prediction gen_rank(size_t instance_index, const Instance& instance,
                    Provider& candidate_provider, Provider& generated_provider,
                    const std::string& vl_model, int gen_count,
                    GenAggregation aggregation) {
  if (gen_count < 1) fail(ErrorKind::Config, "gen_count must be >= 1");
  std::vector<EmbedItem> items;
  items.reserve(gen_count);
  const std::string& context = instance.effective_context();
  for (int k = 0; k < gen_count; ++k) {
    items.push_back({Modality::Image, gen_image_key(context, k)});
  }
  const std::vector<EmbeddingVector> generated =
      generated_provider.fetch(vl_model, items);
  const ScoreBreakdown breakdown =
      gen_score(instance, generated, candidate_provider, vl_model, aggregation);
  std::vector<double> totals;
  totals.reserve(breakdown.candidates.size());
  for (const auto& c : breakdown.candidates) totals.push_back(c.total);
  return make_prediction(instance_index, instance, totals);
}

}  // namespace vwsd
