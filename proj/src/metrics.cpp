#include "vwsd/metrics.hpp"

#include <cmath>

#include "vwsd/error.hpp"

namespace vwsd {

double hit_rate(const std::vector<Prediction>& predictions) {
  if (predictions.empty()) fail(ErrorKind::Eval, "hit_rate over an empty prediction list");
  size_t hits = 0;
  for (const auto& prediction : predictions) {
    if (!prediction.has_gold()) {
      fail(ErrorKind::Eval, "hit_rate requires gold for every instance (instance " +
                                std::to_string(prediction.instance_index) + " lacks it)");
    }
    if (prediction.chosen() == prediction.gold_index) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(predictions.size());
}

double mrr(const std::vector<Prediction>& predictions) {
  if (predictions.empty()) fail(ErrorKind::Eval, "mrr over an empty prediction list");
  double sum = 0.0;
  for (const auto& prediction : predictions) {
    if (!prediction.has_gold()) {
      fail(ErrorKind::Eval, "mrr requires gold for every instance (instance " +
                                std::to_string(prediction.instance_index) + " lacks it)");
    }
    sum += 1.0 / static_cast<double>(prediction.gold_rank());
  }
  return sum / static_cast<double>(predictions.size());
}

double macro_average(const std::map<std::string, double>& per_language) {
  if (per_language.empty()) fail(ErrorKind::Eval, "macro average over an empty map");
  double sum = 0.0;
  for (const auto& [language, value] : per_language) sum += value;
  return sum / static_cast<double>(per_language.size());
}

double pearson(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    fail(ErrorKind::Shape, "pearson: length mismatch (" + std::to_string(a.size()) +
                               " vs " + std::to_string(b.size()) + ")");
  }
  if (a.size() < 2) fail(ErrorKind::Eval, "pearson requires at least two points");
  const double n = static_cast<double>(a.size());
  double mean_a = 0.0, mean_b = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    mean_a += a[i];
    mean_b += b[i];
  }
  mean_a /= n;
  mean_b /= n;
  double cov = 0.0, var_a = 0.0, var_b = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - mean_a;
    const double db = b[i] - mean_b;
    cov += da * db;
    var_a += da * da;
    var_b += db * db;
  }
  if (var_a == 0.0 || var_b == 0.0) {
    fail(ErrorKind::Degenerate, "pearson: zero variance input");
  }
  return cov / (std::sqrt(var_a) * std::sqrt(var_b));
}

}  // namespace vwsd
