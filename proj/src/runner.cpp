#include "vwsd/runner.hpp"

#include <chrono>
#include <fstream>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "vwsd/error.hpp"
#include "vwsd/gen.hpp"
#include "vwsd/kvfile.hpp"
#include "vwsd/preset.hpp"
#include "vwsd/scoring.hpp"
#include "vwsd/testkit/mock.hpp"
#include "vwsd/util.hpp"

namespace vwsd {

namespace fs = std::filesystem;

RunServices make_services(const SystemConfig& config) {
  RunServices services;

  services.store = config.store_path.empty()
                       ? EmbeddingStore::memory(config.mock ? config.mock_dim : 0)
                       : EmbeddingStore::open(config.store_path,
                                              config.mock ? config.mock_dim : 0);
  std::shared_ptr<EmbedBackend> backend;
  if (config.mock) {
    backend = std::make_shared<testkit::MockEmbedBackend>(config.seed, config.mock_dim);
  } else if (!config.embed_endpoint.empty()) {
    backend = std::make_shared<HttpEmbedBackend>(config.embed_endpoint, config.retries);
  }
  ProviderOptions options;
  options.image_root = config.image_root;
  options.max_input_len = config.max_input_len;
  services.provider = std::make_shared<Provider>(services.store, backend, options);

  if (!config.gen_store_path.empty()) {
    services.gen_store = EmbeddingStore::open(config.gen_store_path,
                                              config.mock ? config.mock_dim : 0);
  } else {
    services.gen_store = EmbeddingStore::memory(config.mock ? config.mock_dim : 0);
  }
  // Generated-image embeddings are produced externally; only the mock
  // backend can synthesize them on demand.
  services.gen_provider = std::make_shared<Provider>(
      services.gen_store, config.mock ? backend : nullptr, ProviderOptions{});

  if (config.mock) {
    services.generation = std::make_shared<testkit::MockGenerationService>();
    services.translation = std::make_shared<testkit::MockTranslationService>();
  } else {
    if (!config.generate_endpoint.empty()) {
      services.generation =
          std::make_shared<HttpGenerationService>(config.generate_endpoint, config.retries);
    }
    if (!config.translate_endpoint.empty()) {
      services.translation =
          std::make_shared<HttpTranslationService>(config.translate_endpoint, config.retries);
    }
  }

  services.augment_cache = std::make_shared<TextCache>(
      config.augment_cache_path.empty() ? TextCache()
                                        : TextCache::open(config.augment_cache_path));
  services.translate_cache = std::make_shared<TextCache>(
      config.translate_cache_path.empty() ? TextCache()
                                          : TextCache::open(config.translate_cache_path));

  if (!config.inventory_path.empty()) {
    services.inventory = SenseInventory::load(config.inventory_path);
  }
  if (!config.masks_path.empty()) {
    services.masks = load_mask_values(config.masks_path);
  }
  return services;
}

namespace {

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

void write_file_or_fail(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Parse, "cannot write: " + path.string());
  out << content;
}

}  // namespace

RunResult run_pipeline(const SystemConfig& config, const std::vector<DatasetRef>& refs,
                       RunServices& services, const fs::path& out_dir,
                       const std::string& config_origin) {
  if (refs.empty()) fail(ErrorKind::Config, "run needs at least one dataset");

  struct DatasetRun {
    std::string language;
    std::string name;
    std::vector<Instance> instances;
    std::vector<Prediction> predictions;
  };
  std::vector<DatasetRun> runs;
  BatchCounters counters;
  size_t global_index = 0;

  for (const auto& ref : refs) {
    Dataset dataset = load_dataset(ref.data, ref.gold, ref.language);
    dataset.name = ref.name;
    dataset.split = ref.split;

    const ResolvedSystem resolved = resolve_preset(config.system, dataset.language, config);

    std::vector<Instance> instances = dataset.instances;
    if (resolved.translate && dataset.language != "en") {
      Translator translator(services.translate_cache.get(), services.translation.get());
      instances = translator.translate_batch(instances);
    }
    if (resolved.augment) {
      Augmenter augmenter(services.augment_cache.get(), services.generation.get(),
                          config.batch_size);
      instances = augmenter.augment_batch(instances);
    }

    std::vector<Prediction> predictions;
    switch (resolved.strategy) {
      case Strategy::Algorithm: {
        SimilarityScorer scorer(*services.provider, resolved.models.vl, resolved.models.l);
        predictions =
            rank_batch(instances, services.inventory ? &*services.inventory : nullptr,
                       *resolved.weights, scorer, config.jobs, &counters);
        break;
      }
      case Strategy::Generative: {
        if (!services.gen_provider) fail(ErrorKind::Config, "gen strategy needs a provider");
        // Candidate embeddings prefetch through the main provider.
        std::vector<EmbedItem> items;
        for (const auto& instance : instances) {
          for (const auto& image : instance.candidates) {
            items.push_back({Modality::Image, image});
          }
        }
        services.provider->fetch(resolved.models.vl, items);
        // Generated embeddings prefetch (serial; keeps store appends ordered).
        for (const auto& instance : instances) {
          std::vector<EmbedItem> gen_items;
          for (int k = 0; k < config.gen_count; ++k) {
            gen_items.push_back(
                {Modality::Image, gen_image_key(instance.effective_context(), k)});
          }
          services.gen_provider->fetch(resolved.models.vl, gen_items);
        }
        predictions.resize(instances.size());
        std::exception_ptr first_error;
        const int n = static_cast<int>(instances.size());
#ifdef _OPENMP
        const int workers = config.jobs > 0 ? config.jobs : omp_get_max_threads();
#else
        const int workers = 1;
#endif
#pragma omp parallel for schedule(static) num_threads(workers)
        for (int i = 0; i < n; ++i) {
          try {
            predictions[i] = gen_rank(static_cast<size_t>(i), instances[i],
                                      *services.provider, *services.gen_provider,
                                      resolved.models.vl, config.gen_count,
                                      config.gen_aggregation);
          } catch (...) {
#pragma omp critical
            if (!first_error) first_error = std::current_exception();
          }
        }
        if (first_error) std::rethrow_exception(first_error);
        break;
      }
      case Strategy::Segmentation: {
        if (!services.masks) {
          fail(ErrorKind::Config, "seg strategy requires a mask-value file (masks=...)");
        }
        for (size_t i = 0; i < instances.size(); ++i) {
          predictions.push_back(
              seg_select_from_table(global_index + i, instances[i], *services.masks));
        }
        break;
      }
    }

    // Rebase instance indices onto the run-global sequence.
    for (size_t i = 0; i < predictions.size(); ++i) {
      predictions[i].instance_index = global_index + i;
    }
    global_index += instances.size();

    DatasetRun run;
    run.language = dataset.language;
    run.name = dataset.name;
    run.instances = std::move(instances);
    run.predictions = std::move(predictions);
    runs.push_back(std::move(run));
  }

  // Group predictions by language for the report.
  std::map<std::string, std::vector<Prediction>> by_language;
  for (const auto& run : runs) {
    auto& bucket = by_language[run.language];
    bucket.insert(bucket.end(), run.predictions.begin(), run.predictions.end());
  }
  std::vector<std::pair<std::string, std::vector<Prediction>>> per_language(
      by_language.begin(), by_language.end());

  RunResult result;
  result.report = build_report(per_language, config_echo(config), config.seed,
                               counters.gloss_fallbacks,
                               services.provider->truncation_count());
  result.report_table = report_to_table(result.report);

  std::vector<const Instance*> all_instances;
  std::vector<Prediction> all_predictions;
  for (const auto& run : runs) {
    for (size_t i = 0; i < run.instances.size(); ++i) {
      all_instances.push_back(&run.instances[i]);
      all_predictions.push_back(run.predictions[i]);
    }
  }

  fs::create_directories(out_dir);
  result.predictions_path = out_dir / "predictions.tsv";
  result.report_path = out_dir / "report.json";
  result.manifest_path = out_dir / "run.manifest";

  KvBlock manifest;
  manifest.emplace_back("version", "vwsd 0.1.0");
  manifest.emplace_back("created_utc", utc_timestamp());
  manifest.emplace_back("config", config_origin.empty() ? "(flags)" : config_origin);
  manifest.emplace_back("system", to_string(config.system));
  manifest.emplace_back("seed", std::to_string(config.seed));
  manifest.emplace_back("jobs", std::to_string(config.jobs));
  manifest.emplace_back("out", out_dir.string());
  for (const auto& run : runs) {
    manifest.emplace_back("dataset", run.name + " (" + run.language + ", n=" +
                                         std::to_string(run.instances.size()) + ")");
  }

  // All-or-nothing output: failed writes tear down what was written.
  std::vector<fs::path> written;
  try {
    write_file_or_fail(result.predictions_path, predictions_to_tsv(all_instances, all_predictions));
    written.push_back(result.predictions_path);
    write_file_or_fail(result.report_path, report_to_json(result.report));
    written.push_back(result.report_path);
    write_file_or_fail(result.manifest_path, kv_to_string(manifest));
    written.push_back(result.manifest_path);
  } catch (...) {
    for (const auto& path : written) {
      std::error_code ec;
      fs::remove(path, ec);
    }
    throw;
  }
  return result;
}

}  // namespace vwsd
