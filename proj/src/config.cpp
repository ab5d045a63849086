#include "vwsd/config.hpp"

#include <charconv>

#include "vwsd/error.hpp"
#include "vwsd/kvfile.hpp"
#include "vwsd/util.hpp"

namespace vwsd {

SystemId parse_system(const std::string& name) {
  const std::string n = ascii_lower(name);
  if (n == "tr") return SystemId::Tr;
  if (n == "tr-def") return SystemId::TrDef;
  if (n == "langspec") return SystemId::LangSpec;
  if (n == "gen") return SystemId::Gen;
  if (n == "gen-def") return SystemId::GenDef;
  if (n == "seg") return SystemId::Seg;
  if (n == "seg-def") return SystemId::SegDef;
  if (n == "langspec-def") {
    fail(ErrorKind::Unsupported, "Def cannot be combined with LangSpec");
  }
  fail(ErrorKind::Config, "unknown system: " + name);
}

const char* to_string(SystemId system) {
  switch (system) {
    case SystemId::Tr: return "tr";
    case SystemId::TrDef: return "tr-def";
    case SystemId::LangSpec: return "langspec";
    case SystemId::Gen: return "gen";
    case SystemId::GenDef: return "gen-def";
    case SystemId::Seg: return "seg";
    case SystemId::SegDef: return "seg-def";
  }
  return "tr";
}

bool def_enabled(SystemId system) {
  return system == SystemId::TrDef || system == SystemId::GenDef ||
         system == SystemId::SegDef;
}

BaseSystem base_system(SystemId system) {
  switch (system) {
    case SystemId::Tr:
    case SystemId::TrDef: return BaseSystem::Tr;
    case SystemId::LangSpec: return BaseSystem::LangSpec;
    case SystemId::Gen:
    case SystemId::GenDef: return BaseSystem::Gen;
    case SystemId::Seg:
    case SystemId::SegDef: return BaseSystem::Seg;
  }
  return BaseSystem::Tr;
}

std::map<std::string, ModelPair> default_model_registry() {
  return {
      {"en", {"clip-en", "bert-en"}},
      {"it", {"clip-it", "bert-it"}},
      {"fa", {"clip-fa", "bert-fa"}},
  };
}

namespace {

double parse_real(const std::string& value, const std::string& key) {
  try {
    size_t used = 0;
    const double parsed = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    fail(ErrorKind::Config, "key '" + key + "': expected a number, got '" + value + "'");
  }
}

int64_t parse_int(const std::string& value, const std::string& key) {
  int64_t parsed = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    fail(ErrorKind::Config, "key '" + key + "': expected an integer, got '" + value + "'");
  }
  return parsed;
}

uint64_t parse_u64(const std::string& value, const std::string& key) {
  uint64_t parsed = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    fail(ErrorKind::Config, "key '" + key + "': expected an unsigned integer, got '" + value + "'");
  }
  return parsed;
}

bool parse_bool(const std::string& value, const std::string& key) {
  const std::string v = ascii_lower(value);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  fail(ErrorKind::Config, "key '" + key + "': expected a boolean, got '" + value + "'");
}

}  // namespace

SystemConfig config_from_kv(const std::string& content, const std::string& origin) {
  SystemConfig config;
  config.models = default_model_registry();
  std::optional<double> w_ic, w_ig, w_cg;

  for (const auto& [key, value] : parse_kv_file(content, origin)) {
    if (key == "system") {
      config.system = parse_system(value);
    } else if (key == "w_ic") {
      w_ic = parse_real(value, key);
    } else if (key == "w_ig") {
      w_ig = parse_real(value, key);
    } else if (key == "w_cg") {
      w_cg = parse_real(value, key);
    } else if (key == "seed") {
      config.seed = parse_u64(value, key);
    } else if (key == "jobs") {
      config.jobs = static_cast<int>(parse_int(value, key));
    } else if (key == "gen_count") {
      config.gen_count = static_cast<int>(parse_int(value, key));
    } else if (key == "gen_steps") {
      config.gen_steps = static_cast<int>(parse_int(value, key));
    } else if (key == "gen_guidance") {
      config.gen_guidance = parse_real(value, key);
    } else if (key == "gen_aggregation") {
      const std::string v = ascii_lower(value);
      if (v == "mean") {
        config.gen_aggregation = GenAggregation::Mean;
      } else if (v == "max") {
        config.gen_aggregation = GenAggregation::Max;
      } else {
        fail(ErrorKind::Config, "gen_aggregation must be 'mean' or 'max'");
      }
    } else if (key == "batch_size") {
      config.batch_size = static_cast<int>(parse_int(value, key));
    } else if (key == "retries") {
      config.retries = static_cast<int>(parse_int(value, key));
    } else if (key == "max_input_len") {
      config.max_input_len = static_cast<size_t>(parse_u64(value, key));
    } else if (key == "mock_dim") {
      config.mock_dim = static_cast<uint32_t>(parse_u64(value, key));
    } else if (key == "mock") {
      config.mock = parse_bool(value, key);
    } else if (key == "store") {
      config.store_path = value;
    } else if (key == "gen_store") {
      config.gen_store_path = value;
    } else if (key == "augment_cache") {
      config.augment_cache_path = value;
    } else if (key == "translate_cache") {
      config.translate_cache_path = value;
    } else if (key == "inventory") {
      config.inventory_path = value;
    } else if (key == "masks") {
      config.masks_path = value;
    } else if (key == "image_root") {
      config.image_root = value;
    } else if (key == "embed_endpoint") {
      config.embed_endpoint = value;
    } else if (key == "generate_endpoint") {
      config.generate_endpoint = value;
    } else if (key == "translate_endpoint") {
      config.translate_endpoint = value;
    } else if (key.starts_with("model.")) {
      // model.<lang>.vl / model.<lang>.l
      const std::vector<std::string> parts = split(key, '.');
      if (parts.size() != 3 || parts[1].empty() ||
          (parts[2] != "vl" && parts[2] != "l")) {
        fail(ErrorKind::Config, "model keys must look like model.<lang>.vl or model.<lang>.l, got '" + key + "'");
      }
      auto& entry = config.models[parts[1]];
      (parts[2] == "vl" ? entry.vl : entry.l) = value;
    } else {
      fail(ErrorKind::Config, origin + ": unknown config key '" + key + "'");
    }
  }

  if (w_ic || w_ig || w_cg) {
    Weights weights;
    weights.ic = w_ic.value_or(0.0);
    weights.ig = w_ig.value_or(0.0);
    weights.cg = w_cg.value_or(0.0);
    config.weights = weights;
  }

  validate_config(config);
  return config;
}

SystemConfig load_config(const std::filesystem::path& path) {
  return config_from_kv(read_text_file(path.string()), path.string());
}

void validate_config(const SystemConfig& config) {
  const BaseSystem base = base_system(config.system);
  if (config.weights && (base == BaseSystem::Tr || base == BaseSystem::LangSpec)) {
    validate_weights(*config.weights);
    if (config.system == SystemId::TrDef &&
        (config.weights->ig != 0.0 || config.weights->cg != 0.0)) {
      fail(ErrorKind::Config,
           "tr-def fixes w_ig = w_cg = 0; remove the overrides or use tr");
    }
  }
  if (config.gen_count < 1) fail(ErrorKind::Config, "gen_count must be >= 1");
  if (config.batch_size < 1) fail(ErrorKind::Config, "batch_size must be >= 1");
  if (config.retries < 1) fail(ErrorKind::Config, "retries must be >= 1");
  if (config.jobs < 0) fail(ErrorKind::Config, "jobs must be >= 0");
  if (config.mock_dim == 0) fail(ErrorKind::Config, "mock_dim must be > 0");
  for (const auto& [lang, pair] : config.models) {
    if (pair.vl.empty() || pair.l.empty()) {
      fail(ErrorKind::Config, "model registry entry for '" + lang +
                                  "' must name both vl and l encoders");
    }
  }
}

nlohmann::json config_echo(const SystemConfig& config) {
  nlohmann::json echo;
  echo["system"] = to_string(config.system);
  echo["def"] = def_enabled(config.system);
  const BaseSystem base = base_system(config.system);
  if (base == BaseSystem::Gen || base == BaseSystem::Seg) {
    echo["weights"] = nullptr;  // ignored by these strategies
  } else if (config.weights) {
    echo["weights"] = {{"w_ic", config.weights->ic},
                       {"w_ig", config.weights->ig},
                       {"w_cg", config.weights->cg}};
  } else {
    echo["weights"] = "preset";
  }
  nlohmann::json models;
  for (const auto& [lang, pair] : config.models) {
    models[lang] = {{"vl", pair.vl}, {"l", pair.l}};
  }
  echo["models"] = models;
  if (base == BaseSystem::Gen) {
    echo["gen"] = {{"count", config.gen_count},
                   {"steps", config.gen_steps},
                   {"guidance", config.gen_guidance},
                   {"aggregation", config.gen_aggregation == GenAggregation::Mean
                                       ? "mean"
                                       : "max"}};
  }
  echo["seed"] = config.seed;
  echo["max_input_len"] = config.max_input_len;
  echo["batch_size"] = config.batch_size;
  echo["mock"] = config.mock;
  return echo;
}

}  // namespace vwsd
