#include "vwsd/testkit/mock.hpp"

#include <cmath>

#include "vwsd/error.hpp"
#include "vwsd/prompt.hpp"
#include "vwsd/util.hpp"

namespace vwsd::testkit {

EmbeddingVector mock_embed(const std::string& model_id, Modality modality,
                           std::string_view input, uint64_t seed, uint32_t dim) {
  if (dim == 0) fail(ErrorKind::Config, "mock_embed requires dim > 0");
  uint64_t h = fnv1a64(model_id);
  h = fnv1a64("\x1f", h);
  h = fnv1a64(to_string(modality), h);
  h = fnv1a64("\x1f", h);
  h = fnv1a64(input, h);
  Rng rng(mix_seed(h, seed));

  std::vector<double> raw(dim);
  double norm_sq = 0.0;
  do {
    norm_sq = 0.0;
    for (uint32_t i = 0; i < dim; ++i) {
      raw[i] = rng.next_signed_unit();
      norm_sq += raw[i] * raw[i];
    }
  } while (norm_sq == 0.0);
  const double norm = std::sqrt(norm_sq);
  std::vector<float> values(dim);
  for (uint32_t i = 0; i < dim; ++i) {
    values[i] = static_cast<float>(raw[i] / norm);
  }
  return make_embedding(model_id, modality, std::string(input), std::move(values));
}

std::string mock_definition(const std::string& context) {
  return "a mock definition of " + context;
}

std::string mock_translation(const std::string& text, const std::string& source,
                             const std::string& target) {
  if (source == target) return text;
  return text + " [" + source + "->" + target + "]";
}

std::vector<std::vector<float>> MockEmbedBackend::embed(
    const std::string& model_id, Modality modality,
    const std::vector<std::string>& inputs) {
  calls_.fetch_add(1);
  std::vector<std::vector<float>> out;
  out.reserve(inputs.size());
  for (const auto& input : inputs) {
    out.push_back(mock_embed(model_id, modality, input, seed_, dim_).values);
  }
  return out;
}

std::string MockGenerationService::generate(const std::string& prompt) {
  calls_.fetch_add(1);
  const std::string header = std::string(kDefinePromptHeader) + "\n";
  if (!prompt.starts_with(header)) {
    fail(ErrorKind::Parse, "mock generation expects the definition prompt header");
  }
  std::string response;
  for (const auto& line : split(prompt.substr(header.size()), '\n')) {
    if (line.empty()) continue;
    response += line + ": " + mock_definition(line) + "\n";
  }
  return response;
}

std::string MockTranslationService::translate(const std::string& text,
                                              const std::string& source,
                                              const std::string& target) {
  calls_.fetch_add(1);
  return mock_translation(text, source, target);
}

}  // namespace vwsd::testkit
