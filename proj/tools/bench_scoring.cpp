// Throughput comparison: serial reference scorer vs the batch kernel at one
// and many workers, on a synthetic corpus. Also cross-checks that both paths
// agree, so the benchmark doubles as a smoke test.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "vwsd/provider.hpp"
#include "vwsd/scoring.hpp"
#include "vwsd/testkit/fixture.hpp"
#include "vwsd/testkit/naive.hpp"

using namespace vwsd;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
  size_t n = argc > 1 ? std::stoul(argv[1]) : 2000;
  uint32_t dim = argc > 2 ? static_cast<uint32_t>(std::stoul(argv[2])) : 64;

  testkit::FixtureOptions options;
  options.dim = dim;
  const testkit::Fixture fixture =
      testkit::make_fixture_dataset(n, testkit::PlantMode::Noise, 20230401, options);
  Provider provider(fixture.store, nullptr);
  SimilarityScorer scorer(provider, fixture.vl_model, fixture.l_model);
  const Weights weights{1.0, 1.0, 1.0};
  const auto& instances = fixture.dataset.instances;

  std::printf("scoring %zu instances, dim %u\n", n, dim);

  // Serial reference.
  auto start = std::chrono::steady_clock::now();
  std::vector<Prediction> reference;
  reference.reserve(n);
  for (size_t i = 0; i < instances.size(); ++i) {
    const auto glosses = fixture.inventory.select_glosses(instances[i].focus_word);
    const ScoreBreakdown breakdown =
        testkit::naive_score_instance(instances[i], glosses, weights, scorer);
    std::vector<double> totals;
    for (const auto& c : breakdown.candidates) totals.push_back(c.total);
    Prediction p;
    p.instance_index = i;
    p.totals = totals;
    p.ranking = testkit::naive_rank(totals);
    reference.push_back(std::move(p));
  }
  const double t_reference = seconds_since(start);

  start = std::chrono::steady_clock::now();
  const std::vector<Prediction> serial =
      rank_batch(instances, &fixture.inventory, weights, scorer, 1);
  const double t_serial = seconds_since(start);

#ifdef _OPENMP
  const int max_workers = omp_get_max_threads();
#else
  const int max_workers = 1;
#endif
  start = std::chrono::steady_clock::now();
  const std::vector<Prediction> parallel =
      rank_batch(instances, &fixture.inventory, weights, scorer, max_workers);
  const double t_parallel = seconds_since(start);

  size_t mismatches = 0;
  for (size_t i = 0; i < n; ++i) {
    for (int j = 0; j < kCandidateCount; ++j) {
      if (std::fabs(reference[i].totals[j] - parallel[i].totals[j]) > 1e-9) ++mismatches;
    }
    if (reference[i].ranking != parallel[i].ranking ||
        serial[i].ranking != parallel[i].ranking) {
      ++mismatches;
    }
  }

  auto row = [&](const std::string& label, double t) {
    std::printf("%-24s %8.3f s   %10.0f inst/s   %5.2fx\n", label.c_str(), t,
                static_cast<double>(n) / t, t_reference / t);
  };
  row("reference (serial)", t_reference);
  row("batch kernel, 1 job", t_serial);
  row("batch kernel, " + std::to_string(max_workers) + " jobs", t_parallel);
  std::printf("mismatches: %zu\n", mismatches);
  return mismatches == 0 ? 0 : 1;
}
