#include "vwsd/grid.hpp"

#include <algorithm>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "vwsd/error.hpp"
#include "vwsd/metrics.hpp"
#include "vwsd/scoring.hpp"
#include "vwsd/util.hpp"

namespace vwsd {

std::vector<GridRow> grid_search(const Dataset& dataset,
                                 const SenseInventory* inventory,
                                 const SimilarityScorer& scorer, size_t sample_n,
                                 uint64_t seed, int jobs) {
  if (dataset.instances.empty()) fail(ErrorKind::Eval, "grid search over an empty dataset");
  for (const auto& instance : dataset.instances) {
    if (!instance.gold) {
      fail(ErrorKind::Eval, "grid search requires gold labels for every instance");
    }
  }

  // Optional seeded subsample, order-preserving.
  std::vector<const Instance*> instances;
  if (sample_n > 0 && sample_n < dataset.instances.size()) {
    Rng rng(mix_seed(fnv1a64("grid_search"), seed));
    std::vector<size_t> picks = rng.sample_indices(dataset.instances.size(), sample_n);
    std::sort(picks.begin(), picks.end());
    for (size_t idx : picks) instances.push_back(&dataset.instances[idx]);
  } else {
    for (const auto& instance : dataset.instances) instances.push_back(&instance);
  }

  std::vector<Instance> working;
  working.reserve(instances.size());
  for (const auto* instance : instances) working.push_back(*instance);

  prefetch_embeddings(working, inventory, scorer);

  std::vector<std::vector<std::string>> glosses(working.size());
  for (size_t i = 0; i < working.size(); ++i) {
    if (inventory) glosses[i] = inventory->select_glosses(working[i].focus_word);
  }

  // Similarities computed once, shared by all seven configurations.
  std::vector<SimTable> tables(working.size());
  std::exception_ptr first_error;
  const int n = static_cast<int>(working.size());
#ifdef _OPENMP
  const int workers = jobs > 0 ? jobs : omp_get_max_threads();
#else
  const int workers = 1;
  (void)jobs;
#endif
#pragma omp parallel for schedule(static) num_threads(workers)
  for (int i = 0; i < n; ++i) {
    try {
      tables[i] = build_sim_table(working[i], glosses[i], scorer);
    } catch (...) {
#pragma omp critical
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);

  std::vector<GridRow> rows;
  for (int ic = 1; ic >= 0; --ic) {
    for (int ig = 1; ig >= 0; --ig) {
      for (int cg = 1; cg >= 0; --cg) {
        if (ic == 0 && ig == 0 && cg == 0) continue;
        const Weights weights{static_cast<double>(ic), static_cast<double>(ig),
                              static_cast<double>(cg)};
        std::vector<Prediction> predictions;
        predictions.reserve(working.size());
        for (size_t i = 0; i < working.size(); ++i) {
          const ScoreBreakdown breakdown = score_from_table(tables[i], glosses[i], weights);
          std::vector<double> totals;
          totals.reserve(breakdown.candidates.size());
          for (const auto& c : breakdown.candidates) totals.push_back(c.total);
          predictions.push_back(make_prediction(i, working[i], totals));
        }
        rows.push_back({weights, hit_rate(predictions)});
      }
    }
  }

  std::sort(rows.begin(), rows.end(), [](const GridRow& a, const GridRow& b) {
    if (a.accuracy != b.accuracy) return a.accuracy > b.accuracy;
    const auto ta = std::make_tuple(a.weights.ic, a.weights.ig, a.weights.cg);
    const auto tb = std::make_tuple(b.weights.ic, b.weights.ig, b.weights.cg);
    return ta > tb;
  });
  return rows;
}

std::string grid_to_table(const std::vector<GridRow>& rows) {
  std::ostringstream out;
  out << "w_ic  w_ig  w_cg  accuracy\n";
  for (const auto& row : rows) {
    out << "   " << row.weights.ic << "     " << row.weights.ig << "     "
        << row.weights.cg << "  " << format_double(row.accuracy) << '\n';
  }
  return out.str();
}

std::string grid_to_tsv(const std::vector<GridRow>& rows) {
  std::string out = "w_ic\tw_ig\tw_cg\taccuracy\n";
  for (const auto& row : rows) {
    out += format_double(row.weights.ic) + "\t" + format_double(row.weights.ig) + "\t" +
           format_double(row.weights.cg) + "\t" + format_double(row.accuracy) + "\n";
  }
  return out;
}

}  // namespace vwsd
