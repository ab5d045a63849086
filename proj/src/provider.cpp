#include "vwsd/provider.hpp"

#include <unordered_map>

#include "vwsd/error.hpp"
#include "vwsd/util.hpp"

namespace vwsd {

Provider::Provider(std::shared_ptr<EmbeddingStore> store,
                   std::shared_ptr<EmbedBackend> backend, ProviderOptions options)
    : store_(std::move(store)), backend_(std::move(backend)), options_(std::move(options)) {
  if (!store_) fail(ErrorKind::Config, "provider requires a store");
}

std::string Provider::truncate_text(const std::string& text) {
  if (options_.max_input_len == 0 || text.size() <= options_.max_input_len) return text;
  size_t end = options_.max_input_len;
  // Back off over continuation bytes, then the lead byte of the cut sequence.
  while (end > 0 && (static_cast<unsigned char>(text[end]) & 0xc0) == 0x80) --end;
  std::string out = text.substr(0, end);
  truncations_.fetch_add(1);
  return out;
}

std::string Provider::input_bytes_for(const EmbedItem& item) const {
  if (item.modality == Modality::Text) return item.key;
  if (options_.image_root.empty()) return item.key;
  return read_text_file((options_.image_root / item.key).string());
}

std::vector<EmbeddingVector> Provider::fetch(const std::string& model_id,
                                             const std::vector<EmbedItem>& items) {
  // Normalize keys (text truncation) up front so cache keys are canonical.
  std::vector<EmbedItem> resolved;
  resolved.reserve(items.size());
  for (const auto& item : items) {
    EmbedItem r = item;
    if (r.modality == Modality::Text) r.key = truncate_text(r.key);
    resolved.push_back(std::move(r));
  }

  // Collect unique misses per modality, preserving first-seen order.
  for (Modality modality : {Modality::Text, Modality::Image}) {
    std::vector<std::string> miss_keys;
    std::unordered_map<std::string, size_t> seen;
    for (const auto& item : resolved) {
      if (item.modality != modality) continue;
      if (seen.contains(item.key)) continue;
      seen.emplace(item.key, miss_keys.size());
      if (!store_->contains(model_id, modality, item.key)) miss_keys.push_back(item.key);
    }
    if (miss_keys.empty()) continue;
    if (!backend_) {
      fail(ErrorKind::Provider, "no embedding for key '" + miss_keys.front() +
                                    "' (model " + model_id +
                                    ") and no service configured");
    }
    std::vector<std::string> inputs;
    inputs.reserve(miss_keys.size());
    for (const auto& key : miss_keys) {
      inputs.push_back(input_bytes_for({modality, key}));
    }
    const std::vector<std::vector<float>> vectors = backend_->embed(model_id, modality, inputs);
    if (vectors.size() != miss_keys.size()) {
      fail(ErrorKind::Integrity, "embedding service returned " +
                                     std::to_string(vectors.size()) + " vectors for " +
                                     std::to_string(miss_keys.size()) + " inputs");
    }
    for (size_t i = 0; i < miss_keys.size(); ++i) {
      if (store_->dim() != 0 && vectors[i].size() != store_->dim()) {
        fail(ErrorKind::Integrity, "embedding dim " + std::to_string(vectors[i].size()) +
                                       " does not match store dim " +
                                       std::to_string(store_->dim()) + " for key '" +
                                       miss_keys[i] + "'");
      }
      store_->put(make_embedding(model_id, modality, miss_keys[i], vectors[i]));
    }
  }

  std::vector<EmbeddingVector> out;
  out.reserve(resolved.size());
  for (const auto& item : resolved) {
    auto vec = store_->get(model_id, item.modality, item.key);
    if (!vec) {
      fail(ErrorKind::Provider, "embedding for key '" + item.key + "' missing after fetch");
    }
    out.push_back(std::move(*vec));
  }
  return out;
}

EmbeddingVector Provider::get(const std::string& model_id, Modality modality,
                              const std::string& key) {
  return fetch(model_id, {{modality, key}}).front();
}

double SimilarityScorer::sim_vl(const std::string& image_key, const std::string& text) const {
  const EmbeddingVector image = provider_->get(vl_model_, Modality::Image, image_key);
  const EmbeddingVector embedded_text = provider_->get(vl_model_, Modality::Text, text);
  return cosine(image, embedded_text);
}

double SimilarityScorer::sim_l(const std::string& text_a, const std::string& text_b) const {
  const EmbeddingVector a = provider_->get(l_model_, Modality::Text, text_a);
  const EmbeddingVector b = provider_->get(l_model_, Modality::Text, text_b);
  return cosine(a, b);
}

}  // namespace vwsd
