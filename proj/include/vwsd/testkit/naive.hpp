#pragma once

#include <string>
#include <vector>

#include "vwsd/scoring.hpp"
#include "vwsd/types.hpp"

namespace vwsd::testkit {

// Serial reference scorer: a literal double loop over candidates and
// glosses with direct similarity calls. Shares no combination or ranking
// code with the production path; tests and the benchmark compare the two.
ScoreBreakdown naive_score_instance(const Instance& instance,
                                    const std::vector<std::string>& glosses,
                                    const Weights& weights,
                                    const SimilarityScorer& scorer);

// Selection-based ordering: repeatedly takes the highest remaining total,
// earliest candidate first on exact ties.
std::vector<int> naive_rank(const std::vector<double>& totals);

}  // namespace vwsd::testkit
