#include "vwsd/embedding.hpp"

#include <cmath>

#include "vwsd/error.hpp"

namespace vwsd {

EmbeddingVector make_embedding(std::string model_id, Modality modality,
                               std::string key, std::vector<float> values) {
  if (values.empty()) fail(ErrorKind::Validation, "embedding dim must be > 0");
  for (float v : values) {
    if (!std::isfinite(v)) {
      fail(ErrorKind::Validation, "embedding for '" + key + "' has a non-finite value");
    }
  }
  EmbeddingVector vec;
  vec.model_id = std::move(model_id);
  vec.modality = modality;
  vec.key = std::move(key);
  vec.values = std::move(values);
  return vec;
}

double cosine(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) {
    fail(ErrorKind::Shape, "cosine: dimension mismatch (" + std::to_string(a.size()) +
                               " vs " + std::to_string(b.size()) + ")");
  }
  if (a.empty()) fail(ErrorKind::Shape, "cosine: empty vectors");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double x = a[i];
    const double y = b[i];
    dot += x * y;
    na += x * x;
    nb += y * y;
  }
  if (na == 0.0 || nb == 0.0) {
    fail(ErrorKind::Degenerate, "cosine: zero vector");
  }
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  return cosine(std::span<const float>(a.values), std::span<const float>(b.values));
}

}  // namespace vwsd
