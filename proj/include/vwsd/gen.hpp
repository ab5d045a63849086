#pragma once

#include <string>
#include <vector>

#include "vwsd/config.hpp"
#include "vwsd/embedding.hpp"
#include "vwsd/provider.hpp"
#include "vwsd/scoring.hpp"
#include "vwsd/types.hpp"

namespace vwsd {

// Store key for the k-th externally generated image of a context:
// "gen:<fnv1a64 hex of the context>#<k>". Generated-image embeddings live in
// a provider store under the vision-language model, image modality.
std::string gen_image_key(const std::string& context, int sample_index);

// Scores candidates by their similarity to the generated images: mean (or
// max) cosine against the generated set. Gloss fields stay absent.
ScoreBreakdown gen_score(const Instance& instance,
                         const std::vector<EmbeddingVector>& generated,
                         Provider& provider, const std::string& vl_model,
                         GenAggregation aggregation = GenAggregation::Mean);

// Pulls the gen_count generated embeddings for the instance's effective
// context from the given provider, then scores.
Prediction gen_rank(size_t instance_index, const Instance& instance,
                    Provider& candidate_provider, Provider& generated_provider,
                    const std::string& vl_model, int gen_count,
                    GenAggregation aggregation);

}  // namespace vwsd
