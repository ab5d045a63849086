#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "vwsd/scoring.hpp"

namespace vwsd {

// Fraction of predictions whose top-ranked candidate is gold (top-1
// accuracy). Every prediction must carry gold.
double hit_rate(const std::vector<Prediction>& predictions);

// Mean of 1/rank(gold), ranks 1-based within each prediction's ordering.
double mrr(const std::vector<Prediction>& predictions);

// Unweighted mean over languages.
double macro_average(const std::map<std::string, double>& per_language);

// Standard Pearson coefficient; requires equal lengths >= 2 and nonzero
// variance on both sides.
double pearson(std::span<const double> a, std::span<const double> b);

}  // namespace vwsd
