#pragma once

#include <atomic>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "vwsd/embedding.hpp"
#include "vwsd/store.hpp"

namespace vwsd {

struct EmbedItem {
  Modality modality = Modality::Text;
  // Text modality: the text itself. Image modality: the opaque image id.
  std::string key;
};

// Produces embeddings for cache misses. Inputs arrive as raw bytes: the
// (possibly truncated) text, or the image file bytes when an image root is
// configured, the id bytes otherwise.
class EmbedBackend {
 public:
  virtual ~EmbedBackend() = default;
  virtual std::vector<std::vector<float>> embed(const std::string& model_id,
                                                Modality modality,
                                                const std::vector<std::string>& inputs) = 0;
  // Requests issued so far (each network attempt counts).
  virtual size_t network_calls() const { return 0; }
};

// POST {endpoint}/v1/embed with {"model", "modality", "inputs"}; image inputs
// are base64 file bytes. Non-200 and transport failures are retried; the
// final error names the attempt count.
class HttpEmbedBackend : public EmbedBackend {
 public:
  HttpEmbedBackend(std::string endpoint, int retries);
  std::vector<std::vector<float>> embed(const std::string& model_id, Modality modality,
                                        const std::vector<std::string>& inputs) override;
  size_t network_calls() const override { return calls_.load(); }

 private:
  std::string endpoint_;
  int retries_;
  std::atomic<size_t> calls_{0};
};

struct ProviderOptions {
  std::filesystem::path image_root;  // empty: image ids embed as their own bytes
  size_t max_input_len = 0;          // bytes; 0 = unlimited; UTF-8 boundary safe
};

// Embedding acquisition with a write-through store. Every fetched vector is
// persisted before it is returned; repeated fetches never touch the backend.
class Provider {
 public:
  Provider(std::shared_ptr<EmbeddingStore> store, std::shared_ptr<EmbedBackend> backend,
           ProviderOptions options = {});

  // Order-preserving batch; duplicates resolve to a single backend input.
  std::vector<EmbeddingVector> fetch(const std::string& model_id,
                                     const std::vector<EmbedItem>& items);

  EmbeddingVector get(const std::string& model_id, Modality modality,
                      const std::string& key);

  const EmbeddingStore& store() const { return *store_; }
  size_t truncation_count() const { return truncations_.load(); }
  size_t backend_calls() const { return backend_ ? backend_->network_calls() : 0; }

  // Applies the configured byte limit without splitting a UTF-8 code point.
  std::string truncate_text(const std::string& text);

 private:
  std::string input_bytes_for(const EmbedItem& item) const;

  std::shared_ptr<EmbeddingStore> store_;
  std::shared_ptr<EmbedBackend> backend_;
  ProviderOptions options_;
  std::atomic<size_t> truncations_{0};
};

// The two similarity functions, bound to concrete encoder ids. Both are
// cosine over embeddings with no rescaling.
class SimilarityScorer {
 public:
  SimilarityScorer(Provider& provider, std::string vl_model, std::string l_model)
      : provider_(&provider), vl_model_(std::move(vl_model)), l_model_(std::move(l_model)) {}

  // Image-to-text similarity under the shared vision-language encoder.
  double sim_vl(const std::string& image_key, const std::string& text) const;
  // Text-to-text similarity under the written-language encoder.
  double sim_l(const std::string& text_a, const std::string& text_b) const;

  Provider& provider() const { return *provider_; }
  const std::string& vl_model() const { return vl_model_; }
  const std::string& l_model() const { return l_model_; }

 private:
  Provider* provider_;
  std::string vl_model_;
  std::string l_model_;
};

}  // namespace vwsd
