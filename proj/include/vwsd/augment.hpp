#pragma once

#include <atomic>
#include <memory>
#include <string>
#include <vector>

#include "vwsd/textcache.hpp"
#include "vwsd/types.hpp"

namespace vwsd {

class GenerationService {
 public:
  virtual ~GenerationService() = default;
  virtual std::string generate(const std::string& prompt) = 0;
  virtual size_t calls() const { return 0; }
};

class TranslationService {
 public:
  virtual ~TranslationService() = default;
  virtual std::string translate(const std::string& text, const std::string& source,
                                const std::string& target) = 0;
  virtual size_t calls() const { return 0; }
};

// POST {endpoint}/v1/generate {"prompt"} -> {"text"}.
class HttpGenerationService : public GenerationService {
 public:
  HttpGenerationService(std::string endpoint, int retries);
  std::string generate(const std::string& prompt) override;
  size_t calls() const override { return calls_.load(); }

 private:
  std::string endpoint_;
  int retries_;
  std::atomic<size_t> calls_{0};
};

// POST {endpoint}/v1/translate {"text", "source", "target"} -> {"text"}.
class HttpTranslationService : public TranslationService {
 public:
  HttpTranslationService(std::string endpoint, int retries);
  std::string translate(const std::string& text, const std::string& source,
                        const std::string& target) override;
  size_t calls() const override { return calls_.load(); }

 private:
  std::string endpoint_;
  int retries_;
  std::atomic<size_t> calls_{0};
};

// Def context augmentation: looks definitions up in the cache, batches
// misses through the generation service, and rewrites instances as
// "context: definition". Already-augmented instances pass through untouched.
class Augmenter {
 public:
  Augmenter(TextCache* cache, GenerationService* service, int batch_size = 20);

  Instance augment(const Instance& instance);
  std::vector<Instance> augment_batch(const std::vector<Instance>& instances);

 private:
  void fill_cache(const std::vector<std::string>& contexts);

  TextCache* cache_;
  GenerationService* service_;  // may be null: cache-only operation
  int batch_size_;
};

// Tr translation step: English instances pass through; others have their
// context replaced by the cached or served translation, with the original
// kept in the instance's provenance field.
class Translator {
 public:
  Translator(TextCache* cache, TranslationService* service, std::string target = "en");

  Instance translate(const Instance& instance);
  std::vector<Instance> translate_batch(const std::vector<Instance>& instances);

 private:
  TextCache* cache_;
  TranslationService* service_;  // may be null: cache-only operation
  std::string target_;
};

}  // namespace vwsd
