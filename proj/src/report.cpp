#include "vwsd/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "vwsd/error.hpp"
#include "vwsd/metrics.hpp"
#include "vwsd/util.hpp"

namespace vwsd {

EvalReport build_report(
    const std::vector<std::pair<std::string, std::vector<Prediction>>>& per_language,
    const nlohmann::json& config_echo, uint64_t seed, size_t gloss_fallbacks,
    size_t truncations) {
  EvalReport report;
  report.config = config_echo;
  report.seed = seed;
  report.gloss_fallbacks = gloss_fallbacks;
  report.truncations = truncations;

  std::map<std::string, double> accuracies;
  std::vector<double> acc_series, mrr_series;
  for (const auto& [language, predictions] : per_language) {
    LanguageBlock block;
    block.language = language;
    block.n = predictions.size();
    const bool evaluable =
        !predictions.empty() &&
        std::all_of(predictions.begin(), predictions.end(),
                    [](const Prediction& p) { return p.has_gold(); });
    if (evaluable) {
      block.hit_rate = hit_rate(predictions);
      block.mrr = mrr(predictions);
      if (*block.mrr < *block.hit_rate) {
        fail(ErrorKind::Eval, "mrr below hit rate for language '" + language +
                                  "'; metric computation is inconsistent");
      }
      accuracies[language] = *block.hit_rate;
      acc_series.push_back(*block.hit_rate);
      mrr_series.push_back(*block.mrr);
    }
    report.languages.push_back(std::move(block));
  }
  std::sort(report.languages.begin(), report.languages.end(),
            [](const LanguageBlock& a, const LanguageBlock& b) {
              return a.language < b.language;
            });
  if (!accuracies.empty()) report.macro_avg = macro_average(accuracies);
  if (acc_series.size() >= 2) {
    try {
      report.pearson_acc_mrr = pearson(acc_series, mrr_series);
    } catch (const Error&) {
      // Zero variance across languages: statistic undefined, reported absent.
    }
  }
  return report;
}

std::string report_to_json(const EvalReport& report) {
  nlohmann::json doc;
  nlohmann::json languages = nlohmann::json::object();
  for (const auto& block : report.languages) {
    nlohmann::json entry;
    entry["n"] = block.n;
    entry["hit_rate"] = block.hit_rate ? nlohmann::json(*block.hit_rate)
                                       : nlohmann::json(nullptr);
    entry["mrr"] = block.mrr ? nlohmann::json(*block.mrr) : nlohmann::json(nullptr);
    languages[block.language] = std::move(entry);
  }
  doc["languages"] = std::move(languages);
  doc["macro_avg"] = report.macro_avg ? nlohmann::json(*report.macro_avg)
                                      : nlohmann::json(nullptr);
  doc["pearson_acc_mrr"] = report.pearson_acc_mrr
                               ? nlohmann::json(*report.pearson_acc_mrr)
                               : nlohmann::json(nullptr);
  doc["config"] = report.config;
  doc["seed"] = report.seed;
  doc["counters"] = {{"gloss_fallbacks", report.gloss_fallbacks},
                     {"truncations", report.truncations}};
  return doc.dump(2) + "\n";
}

std::string report_to_table(const EvalReport& report) {
  std::ostringstream out;
  auto cell = [](const std::optional<double>& v) {
    if (!v) return std::string("-");
    std::ostringstream s;
    s << std::fixed << std::setprecision(4) << *v;
    return s.str();
  };
  out << std::left << std::setw(10) << "language" << std::right << std::setw(8) << "n"
      << std::setw(12) << "hit_rate" << std::setw(12) << "mrr" << '\n';
  for (const auto& block : report.languages) {
    out << std::left << std::setw(10) << block.language << std::right << std::setw(8)
        << block.n << std::setw(12) << cell(block.hit_rate) << std::setw(12)
        << cell(block.mrr) << '\n';
  }
  out << std::left << std::setw(10) << "macro" << std::right << std::setw(8) << ""
      << std::setw(12) << cell(report.macro_avg) << std::setw(12) << "" << '\n';
  if (report.pearson_acc_mrr) {
    out << "pearson(acc, mrr) = " << cell(report.pearson_acc_mrr) << '\n';
  }
  if (report.gloss_fallbacks > 0) {
    out << "gloss fallbacks: " << report.gloss_fallbacks << '\n';
  }
  if (report.truncations > 0) {
    out << "truncated inputs: " << report.truncations << '\n';
  }
  return out.str();
}

std::string predictions_to_tsv(const std::vector<const Instance*>& instances,
                               const std::vector<Prediction>& predictions) {
  if (instances.size() != predictions.size()) {
    fail(ErrorKind::Shape, "instance/prediction count mismatch");
  }
  std::string out;
  for (size_t i = 0; i < predictions.size(); ++i) {
    const Prediction& prediction = predictions[i];
    const Instance& instance = *instances[i];
    out += std::to_string(prediction.instance_index);
    out += '\t';
    for (size_t r = 0; r < prediction.ranking.size(); ++r) {
      if (r > 0) out += ',';
      out += instance.candidates[prediction.ranking[r]];
    }
    out += '\t';
    for (size_t r = 0; r < prediction.ranking.size(); ++r) {
      if (r > 0) out += ',';
      out += format_double(prediction.totals[prediction.ranking[r]]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace vwsd
