#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "vwsd/scoring.hpp"
#include "vwsd/types.hpp"

namespace vwsd {

struct LanguageBlock {
  std::string language;
  size_t n = 0;
  // Absent when the datasets carried no gold labels.
  std::optional<double> hit_rate;
  std::optional<double> mrr;
};

struct EvalReport {
  std::vector<LanguageBlock> languages;           // sorted by language code
  std::optional<double> macro_avg;                // unweighted mean of hit rates
  std::optional<double> pearson_acc_mrr;          // across language blocks
  nlohmann::json config;                          // config echo
  uint64_t seed = 0;
  size_t gloss_fallbacks = 0;
  size_t truncations = 0;
};

// Aggregates per-language predictions into a report. Validates the
// mrr >= hit_rate law per block.
EvalReport build_report(
    const std::vector<std::pair<std::string, std::vector<Prediction>>>& per_language,
    const nlohmann::json& config_echo, uint64_t seed, size_t gloss_fallbacks,
    size_t truncations);

// Byte-stable JSON: fixed key order, shortest round-trip number formatting.
std::string report_to_json(const EvalReport& report);

// Aligned plain-text table for terminals.
std::string report_to_table(const EvalReport& report);

// Prediction dump rows: instance index, ranked candidate ids (comma
// separated), ranked totals (comma separated).
std::string predictions_to_tsv(const std::vector<const Instance*>& instances,
                               const std::vector<Prediction>& predictions);

}  // namespace vwsd
