#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vwsd/augment.hpp"
#include "vwsd/config.hpp"
#include "vwsd/dataset.hpp"
#include "vwsd/error.hpp"
#include "vwsd/grid.hpp"
#include "vwsd/inventory.hpp"
#include "vwsd/preset.hpp"
#include "vwsd/runner.hpp"
#include "vwsd/scoring.hpp"
#include "vwsd/stats.hpp"
#include "vwsd/supplementary.hpp"
#include "vwsd/testkit/mock.hpp"
#include "vwsd/util.hpp"

namespace fs = std::filesystem;

namespace {

// Flag values layered over the config file.
struct CommonFlags {
  std::string config_path;
  std::string system;
  std::string weights;
  std::optional<uint64_t> seed;
  std::optional<int> jobs;
  bool mock = false;
  std::string store;
  std::string gen_store;
  std::string inventory;
  std::string masks;
  std::string augment_cache;
  std::string translate_cache;
  std::string embed_endpoint;
  std::string generate_endpoint;
  std::string translate_endpoint;
  std::optional<int> gen_count;
  std::optional<uint32_t> mock_dim;
  std::optional<int> batch_size;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "key = value config file");
  cmd->add_option("--system", flags.system,
                  "tr|tr-def|langspec|gen|gen-def|seg|seg-def");
  cmd->add_option("--weights", flags.weights, "w_ic,w_ig,w_cg");
  cmd->add_option("--seed", flags.seed, "determinism seed");
  cmd->add_option("--jobs", flags.jobs, "worker cap (0 = all)");
  cmd->add_flag("--mock", flags.mock, "deterministic in-process providers");
  cmd->add_option("--store", flags.store, "embedding store file");
  cmd->add_option("--gen-store", flags.gen_store, "generated-image embedding store");
  cmd->add_option("--inventory", flags.inventory, "sense inventory JSON");
  cmd->add_option("--masks", flags.masks, "mask-value TSV for seg");
  cmd->add_option("--augment-cache", flags.augment_cache, "definition cache TSV");
  cmd->add_option("--translate-cache", flags.translate_cache, "translation cache TSV");
  cmd->add_option("--embed-endpoint", flags.embed_endpoint, "embedding service address");
  cmd->add_option("--generate-endpoint", flags.generate_endpoint,
                  "generation service address");
  cmd->add_option("--translate-endpoint", flags.translate_endpoint,
                  "translation service address");
  cmd->add_option("--gen-count", flags.gen_count, "generated images per context");
  cmd->add_option("--mock-dim", flags.mock_dim, "mock embedding dimension");
  cmd->add_option("--batch-size", flags.batch_size, "texts per service request");
}

vwsd::SystemConfig resolve_config(const CommonFlags& flags) {
  vwsd::SystemConfig config;
  if (!flags.config_path.empty()) {
    config = vwsd::load_config(flags.config_path);
  } else {
    config.models = vwsd::default_model_registry();
  }
  if (!flags.system.empty()) config.system = vwsd::parse_system(flags.system);
  if (!flags.weights.empty()) {
    const std::vector<std::string> parts = vwsd::split(flags.weights, ',');
    if (parts.size() != 3) {
      vwsd::fail(vwsd::ErrorKind::Config, "--weights expects three comma-separated values");
    }
    vwsd::Weights weights;
    try {
      weights.ic = std::stod(parts[0]);
      weights.ig = std::stod(parts[1]);
      weights.cg = std::stod(parts[2]);
    } catch (const std::exception&) {
      vwsd::fail(vwsd::ErrorKind::Config, "--weights expects numbers, got '" + flags.weights + "'");
    }
    config.weights = weights;
  }
  if (flags.seed) config.seed = *flags.seed;
  if (flags.jobs) config.jobs = *flags.jobs;
  if (flags.mock) config.mock = true;
  if (!flags.store.empty()) config.store_path = flags.store;
  if (!flags.gen_store.empty()) config.gen_store_path = flags.gen_store;
  if (!flags.inventory.empty()) config.inventory_path = flags.inventory;
  if (!flags.masks.empty()) config.masks_path = flags.masks;
  if (!flags.augment_cache.empty()) config.augment_cache_path = flags.augment_cache;
  if (!flags.translate_cache.empty()) config.translate_cache_path = flags.translate_cache;
  if (!flags.embed_endpoint.empty()) config.embed_endpoint = flags.embed_endpoint;
  if (!flags.generate_endpoint.empty()) config.generate_endpoint = flags.generate_endpoint;
  if (!flags.translate_endpoint.empty()) config.translate_endpoint = flags.translate_endpoint;
  if (flags.gen_count) config.gen_count = *flags.gen_count;
  if (flags.mock_dim) config.mock_dim = *flags.mock_dim;
  if (flags.batch_size) config.batch_size = *flags.batch_size;
  vwsd::validate_config(config);
  return config;
}

std::vector<vwsd::DatasetRef> resolve_datasets(const std::string& manifest,
                                               const std::string& data,
                                               const std::string& gold,
                                               const std::string& lang) {
  if (!manifest.empty()) {
    if (!data.empty()) {
      vwsd::fail(vwsd::ErrorKind::Config, "--manifest and --data are mutually exclusive");
    }
    return vwsd::load_dataset_manifest(manifest);
  }
  if (data.empty()) {
    vwsd::fail(vwsd::ErrorKind::Config, "provide --manifest or --data with --lang");
  }
  if (lang.empty()) {
    vwsd::fail(vwsd::ErrorKind::Config, "--data requires --lang");
  }
  vwsd::DatasetRef ref;
  ref.data = data;
  if (!gold.empty()) ref.gold = gold;
  ref.language = lang;
  ref.name = fs::path(data).stem().string();
  return {ref};
}

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) vwsd::fail(vwsd::ErrorKind::Parse, "cannot write: " + path.string());
  out << content;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vwsd: rank candidate images for a focus word in context"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string manifest, data, gold, lang, out_dir, resource, cache, service, name;
  size_t sample_n = 0;

  auto* cmd_run = app.add_subcommand("run", "score datasets and write report + predictions");
  add_common_flags(cmd_run, flags);
  cmd_run->add_option("--manifest", manifest, "dataset manifest file");
  cmd_run->add_option("--data", data, "dataset TSV");
  cmd_run->add_option("--gold", gold, "gold id file");
  cmd_run->add_option("--lang", lang, "dataset language code");
  cmd_run->add_option("--out", out_dir, "output directory")->required();

  auto* cmd_grid = app.add_subcommand("grid", "binarized weight grid search");
  add_common_flags(cmd_grid, flags);
  cmd_grid->add_option("--data", data, "dataset TSV")->required();
  cmd_grid->add_option("--gold", gold, "gold id file")->required();
  cmd_grid->add_option("--lang", lang, "dataset language code")->required();
  cmd_grid->add_option("--sample", sample_n, "evaluate on a seeded subsample");
  cmd_grid->add_option("--out", out_dir, "output directory")->required();

  auto* cmd_stats = app.add_subcommand("stats", "dataset polysemy/coverage statistics");
  add_common_flags(cmd_stats, flags);
  cmd_stats->add_option("--data", data, "dataset TSV")->required();
  cmd_stats->add_option("--gold", gold, "gold id file");
  cmd_stats->add_option("--lang", lang, "dataset language code")->required();
  cmd_stats->add_option("--out", out_dir, "output directory");

  auto* cmd_augment = app.add_subcommand("augment", "generate definitions into the cache");
  add_common_flags(cmd_augment, flags);
  cmd_augment->add_option("--data", data, "dataset TSV")->required();
  cmd_augment->add_option("--lang", lang, "dataset language code")->required();
  cmd_augment->add_option("--cache", cache, "definition cache TSV")->required();
  cmd_augment->add_option("--service", service, "generation service address");
  cmd_augment->add_option("--out", out_dir, "directory for augmented.tsv");

  auto* cmd_synth = app.add_subcommand("synth", "build supplementary instances from a resource");
  add_common_flags(cmd_synth, flags);
  cmd_synth->add_option("--resource", resource, "image-mapping JSONL")->required();
  cmd_synth->add_option("--name", name, "output dataset name");
  cmd_synth->add_option("--out", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (cmd_run->parsed()) {
      const vwsd::SystemConfig config = resolve_config(flags);
      const auto refs = resolve_datasets(manifest, data, gold, lang);
      auto services = vwsd::make_services(config);
      const vwsd::RunResult result =
          vwsd::run_pipeline(config, refs, services, out_dir, flags.config_path);
      std::cout << result.report_table;
      std::cout << "wrote " << result.report_path.string() << '\n';
      return 0;
    }

    if (cmd_grid->parsed()) {
      const vwsd::SystemConfig config = resolve_config(flags);
      if (vwsd::base_system(config.system) == vwsd::BaseSystem::Gen ||
          vwsd::base_system(config.system) == vwsd::BaseSystem::Seg) {
        vwsd::fail(vwsd::ErrorKind::Config,
                   "grid search applies to the weighted scoring systems (tr, tr-def, langspec)");
      }
      const auto refs = resolve_datasets("", data, gold, lang);
      auto services = vwsd::make_services(config);
      vwsd::Dataset dataset = vwsd::load_dataset(refs[0].data, refs[0].gold, refs[0].language);

      const vwsd::ResolvedSystem resolved =
          vwsd::resolve_preset(config.system, dataset.language, config);
      std::vector<vwsd::Instance> instances = dataset.instances;
      if (resolved.translate && dataset.language != "en") {
        vwsd::Translator translator(services.translate_cache.get(), services.translation.get());
        instances = translator.translate_batch(instances);
      }
      if (resolved.augment) {
        vwsd::Augmenter augmenter(services.augment_cache.get(), services.generation.get(),
                                  config.batch_size);
        instances = augmenter.augment_batch(instances);
      }
      dataset.instances = std::move(instances);

      vwsd::SimilarityScorer scorer(*services.provider, resolved.models.vl, resolved.models.l);
      const auto rows = vwsd::grid_search(
          dataset, services.inventory ? &*services.inventory : nullptr, scorer, sample_n,
          config.seed, config.jobs);
      std::cout << vwsd::grid_to_table(rows);
      fs::create_directories(out_dir);
      write_text(fs::path(out_dir) / "grid.tsv", vwsd::grid_to_tsv(rows));
      std::cout << "wrote " << (fs::path(out_dir) / "grid.tsv").string() << '\n';
      return 0;
    }

    if (cmd_stats->parsed()) {
      const vwsd::SystemConfig config = resolve_config(flags);
      if (config.inventory_path.empty()) {
        vwsd::fail(vwsd::ErrorKind::Config, "stats requires --inventory");
      }
      const auto refs = resolve_datasets("", data, gold, lang);
      const vwsd::Dataset dataset =
          vwsd::load_dataset(refs[0].data, refs[0].gold, refs[0].language);
      const vwsd::SenseInventory inventory = vwsd::SenseInventory::load(config.inventory_path);
      const vwsd::DatasetStats stats = vwsd::dataset_stats(dataset, inventory);
      const std::string json = vwsd::stats_to_json(stats).dump(2) + "\n";
      std::cout << json;
      if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        write_text(fs::path(out_dir) / "stats.json", json);
      }
      return 0;
    }

    if (cmd_augment->parsed()) {
      const vwsd::SystemConfig config = resolve_config(flags);
      const auto refs = resolve_datasets("", data, gold, lang);
      const vwsd::Dataset dataset =
          vwsd::load_dataset(refs[0].data, refs[0].gold, refs[0].language);
      vwsd::TextCache text_cache = vwsd::TextCache::open(cache);
      std::shared_ptr<vwsd::GenerationService> generation;
      if (config.mock) {
        generation = std::make_shared<vwsd::testkit::MockGenerationService>();
      } else if (!service.empty()) {
        generation = std::make_shared<vwsd::HttpGenerationService>(service, config.retries);
      } else if (!config.generate_endpoint.empty()) {
        generation =
            std::make_shared<vwsd::HttpGenerationService>(config.generate_endpoint, config.retries);
      }
      vwsd::Augmenter augmenter(&text_cache, generation.get(), config.batch_size);
      const std::vector<vwsd::Instance> augmented = augmenter.augment_batch(dataset.instances);
      std::cout << "augmented " << augmented.size() << " instances; cache now holds "
                << text_cache.size() << " definitions\n";
      if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        std::string tsv;
        for (const auto& instance : augmented) {
          tsv += instance.context + "\t" + *instance.augmented_context + "\n";
        }
        write_text(fs::path(out_dir) / "augmented.tsv", tsv);
      }
      return 0;
    }

    if (cmd_synth->parsed()) {
      const vwsd::SystemConfig config = resolve_config(flags);
      const auto resource_rows = vwsd::load_image_mappings(resource);
      std::vector<std::string> warnings;
      vwsd::Dataset dataset = vwsd::build_supplementary(
          resource_rows, vwsd::kCandidateCount - 1, config.seed, &warnings);
      if (!name.empty()) dataset.name = name;
      for (const auto& warning : warnings) std::cerr << "warning: " << warning << '\n';
      fs::create_directories(out_dir);
      const fs::path data_path = fs::path(out_dir) / (dataset.name + ".data.tsv");
      const fs::path gold_path = fs::path(out_dir) / (dataset.name + ".gold.txt");
      vwsd::save_dataset(dataset, data_path, gold_path);
      vwsd::DatasetRef ref;
      ref.name = dataset.name;
      ref.language = dataset.language;
      ref.split = dataset.split;
      ref.data = data_path;
      ref.gold = gold_path;
      vwsd::save_dataset_manifest({ref}, fs::path(out_dir) / (dataset.name + ".manifest"));
      std::cout << "built " << dataset.instances.size() << " instances\n";
      return 0;
    }
  } catch (const vwsd::Error& e) {
    std::cerr << "error (" << vwsd::to_string(e.kind()) << "): " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
