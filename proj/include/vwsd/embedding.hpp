#pragma once

#include <span>
#include <string>
#include <vector>

#include "vwsd/types.hpp"

namespace vwsd {

struct EmbeddingVector {
  std::string model_id;
  Modality modality = Modality::Text;
  std::string key;
  std::vector<float> values;

  uint32_t dim() const { return static_cast<uint32_t>(values.size()); }
};

// Validates non-empty, all-finite values.
EmbeddingVector make_embedding(std::string model_id, Modality modality,
                               std::string key, std::vector<float> values);

// Accumulated in double precision. Throws Shape on dimension mismatch,
// Degenerate on a zero vector.
double cosine(std::span<const float> a, std::span<const float> b);
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

}  // namespace vwsd
