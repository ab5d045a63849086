#include "vwsd/stats.hpp"

#include "vwsd/error.hpp"
#include "vwsd/util.hpp"

namespace vwsd {

namespace {

bool is_noun(const std::string& pos) {
  const std::string p = ascii_lower(pos);
  return p == "n" || p == "noun";
}

}  // namespace

DatasetStats dataset_stats(const Dataset& dataset, const SenseInventory& inventory) {
  if (dataset.instances.empty()) fail(ErrorKind::Eval, "stats over an empty dataset");
  DatasetStats stats;
  stats.n = dataset.instances.size();
  double sense_sum = 0.0;
  size_t noun_count = 0;
  for (const auto& instance : dataset.instances) {
    const auto* senses = inventory.senses(instance.focus_word);
    if (!senses || senses->empty()) continue;
    ++stats.covered;
    sense_sum += static_cast<double>(senses->size());
    if (is_noun(senses->front().pos)) ++noun_count;
  }
  stats.coverage = static_cast<double>(stats.covered) / static_cast<double>(stats.n);
  if (stats.covered > 0) {
    stats.mean_polysemy = sense_sum / static_cast<double>(stats.covered);
    stats.noun_fraction =
        static_cast<double>(noun_count) / static_cast<double>(stats.covered);
  }
  return stats;
}

nlohmann::json stats_to_json(const DatasetStats& stats) {
  nlohmann::json doc;
  doc["n"] = stats.n;
  doc["covered"] = stats.covered;
  doc["coverage"] = stats.coverage;
  doc["mean_polysemy"] =
      stats.mean_polysemy ? nlohmann::json(*stats.mean_polysemy) : nlohmann::json(nullptr);
  doc["noun_fraction"] =
      stats.noun_fraction ? nlohmann::json(*stats.noun_fraction) : nlohmann::json(nullptr);
  return doc;
}

}  // namespace vwsd
