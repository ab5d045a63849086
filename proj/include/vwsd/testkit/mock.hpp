#pragma once

#include <atomic>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "vwsd/augment.hpp"
#include "vwsd/embedding.hpp"
#include "vwsd/provider.hpp"

namespace vwsd::testkit {

// Deterministic stand-in encoder: a unit vector whose components come from
// the pinned splitmix64 stream seeded by fnv1a64 over
// (model_id, 0x1f, modality name, 0x1f, input) mixed with the run seed.
// A pure function: identical inputs give bit-identical vectors everywhere.
EmbeddingVector mock_embed(const std::string& model_id, Modality modality,
                           std::string_view input, uint64_t seed, uint32_t dim);

std::string mock_definition(const std::string& context);
std::string mock_translation(const std::string& text, const std::string& source,
                             const std::string& target);

class MockEmbedBackend : public EmbedBackend {
 public:
  MockEmbedBackend(uint64_t seed, uint32_t dim) : seed_(seed), dim_(dim) {}

  std::vector<std::vector<float>> embed(const std::string& model_id, Modality modality,
                                        const std::vector<std::string>& inputs) override;
  size_t network_calls() const override { return calls_.load(); }

 private:
  uint64_t seed_;
  uint32_t dim_;
  std::atomic<size_t> calls_{0};
};

// Answers any well-formed definition prompt with one
// "<context>: <definition>" line per context.
class MockGenerationService : public GenerationService {
 public:
  std::string generate(const std::string& prompt) override;
  size_t calls() const override { return calls_.load(); }

 private:
  std::atomic<size_t> calls_{0};
};

class MockTranslationService : public TranslationService {
 public:
  std::string translate(const std::string& text, const std::string& source,
                        const std::string& target) override;
  size_t calls() const override { return calls_.load(); }

 private:
  std::atomic<size_t> calls_{0};
};

}  // namespace vwsd::testkit
