#include "vwsd/augment.hpp"

#include <algorithm>

#include "vwsd/error.hpp"
#include "vwsd/prompt.hpp"
#include "vwsd/util.hpp"

namespace vwsd {

Augmenter::Augmenter(TextCache* cache, GenerationService* service, int batch_size)
    : cache_(cache), service_(service), batch_size_(batch_size) {
  if (!cache_) fail(ErrorKind::Config, "augmenter requires a cache");
  if (batch_size_ < 1) fail(ErrorKind::Config, "augment batch size must be >= 1");
}

void Augmenter::fill_cache(const std::vector<std::string>& contexts) {
  // Unique misses in first-seen order.
  std::vector<std::string> misses;
  for (const auto& context : contexts) {
    if (cache_->get(context)) continue;
    if (std::find(misses.begin(), misses.end(), context) == misses.end()) {
      misses.push_back(context);
    }
  }
  if (misses.empty()) return;
  if (!service_) {
    fail(ErrorKind::Unavailable, "augmentation unavailable: '" + misses.front() +
                                     "' not cached and no generation service configured");
  }
  for (size_t begin = 0; begin < misses.size(); begin += batch_size_) {
    const size_t end = std::min(misses.size(), begin + batch_size_);
    const std::vector<std::string> chunk(misses.begin() + begin, misses.begin() + end);
    const std::string response = service_->generate(build_prompt(chunk));
    const auto definitions = parse_definitions(response, chunk);
    for (const auto& context : chunk) {
      const auto it = definitions.find(context);
      if (it == definitions.end()) {
        fail(ErrorKind::Provider,
             "generation response held no definition for context '" + context + "'");
      }
      cache_->put(context, it->second);
    }
  }
}

Instance Augmenter::augment(const Instance& instance) {
  if (instance.augmented_context) return instance;
  fill_cache({instance.context});
  Instance out = instance;
  out.augmented_context = instance.context + ": " + *cache_->get(instance.context);
  return out;
}

std::vector<Instance> Augmenter::augment_batch(const std::vector<Instance>& instances) {
  std::vector<std::string> contexts;
  contexts.reserve(instances.size());
  for (const auto& instance : instances) {
    if (!instance.augmented_context) contexts.push_back(instance.context);
  }
  if (!contexts.empty()) fill_cache(contexts);
  std::vector<Instance> out;
  out.reserve(instances.size());
  for (const auto& instance : instances) out.push_back(augment(instance));
  return out;
}

Translator::Translator(TextCache* cache, TranslationService* service, std::string target)
    : cache_(cache), service_(service), target_(std::move(target)) {
  if (!cache_) fail(ErrorKind::Config, "translator requires a cache");
}

Instance Translator::translate(const Instance& instance) {
  if (instance.language.empty()) {
    fail(ErrorKind::Validation, "cannot translate an instance without a language tag");
  }
  if (instance.language == target_) return instance;
  std::optional<std::string> translation = cache_->get(instance.context);
  if (!translation) {
    if (!service_) {
      fail(ErrorKind::Unavailable, "translation unavailable: '" + instance.context +
                                       "' not cached and no translation service configured");
    }
    translation = service_->translate(instance.context, instance.language, target_);
    if (translation->empty()) {
      fail(ErrorKind::Provider, "translation service returned empty text for '" +
                                    instance.context + "'");
    }
    cache_->put(instance.context, *translation);
    translation = cache_->get(instance.context);  // normalized form
  }
  Instance out = instance;
  out.source_context = instance.context;
  out.context = *translation;
  refresh_focus_flag(out);
  return out;
}

std::vector<Instance> Translator::translate_batch(const std::vector<Instance>& instances) {
  std::vector<Instance> out;
  out.reserve(instances.size());
  for (const auto& instance : instances) out.push_back(translate(instance));
  return out;
}

}  // namespace vwsd
