#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>

#include "helpers.hpp"
#include "vwsd/config.hpp"
#include "vwsd/error.hpp"
#include "vwsd/grid.hpp"
#include "vwsd/metrics.hpp"
#include "vwsd/report.hpp"
#include "vwsd/stats.hpp"
#include "vwsd/testkit/fixture.hpp"
#include "vwsd/util.hpp"

using namespace vwsd;

namespace {

bool fails_with(ErrorKind kind, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

// Hand-built prediction with gold at a chosen rank.
Prediction prediction_with_gold_rank(int rank) {
  Prediction prediction;
  prediction.totals.resize(kCandidateCount);
  for (int i = 0; i < kCandidateCount; ++i) {
    prediction.totals[i] = 1.0 - 0.05 * i;
    prediction.ranking.push_back(i);
  }
  prediction.gold_index = rank - 1;
  return prediction;
}

}  // namespace

TEST_CASE("hit_rate counts top-1 matches") {
  std::vector<Prediction> predictions = {prediction_with_gold_rank(1),
                                         prediction_with_gold_rank(2),
                                         prediction_with_gold_rank(5)};
  CHECK(hit_rate(predictions) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(hit_rate({prediction_with_gold_rank(1), prediction_with_gold_rank(1)}) == 1.0);
  CHECK(hit_rate({prediction_with_gold_rank(2), prediction_with_gold_rank(9)}) == 0.0);

  predictions[1].gold_index = -1;
  CHECK(fails_with(ErrorKind::Eval, [&] { hit_rate(predictions); }));
}

TEST_CASE("mrr averages reciprocal gold ranks") {
  const std::vector<Prediction> predictions = {prediction_with_gold_rank(1),
                                               prediction_with_gold_rank(2),
                                               prediction_with_gold_rank(4)};
  CHECK(mrr(predictions) == doctest::Approx((1.0 + 0.5 + 0.25) / 3.0).epsilon(1e-12));
  CHECK(mrr({prediction_with_gold_rank(1)}) == 1.0);
  CHECK(mrr({prediction_with_gold_rank(10), prediction_with_gold_rank(10)}) ==
        doctest::Approx(0.1).epsilon(1e-12));

  // Gold index outside the ranking is an integrity error.
  Prediction corrupt = prediction_with_gold_rank(1);
  corrupt.gold_index = 42;
  CHECK(fails_with(ErrorKind::Integrity, [&] { mrr({corrupt}); }));
}

TEST_CASE("mrr dominates hit rate on random prediction sets") {
  Rng rng(404);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Prediction> predictions;
    const size_t n = 1 + rng.uniform(30);
    for (size_t i = 0; i < n; ++i) {
      predictions.push_back(
          prediction_with_gold_rank(1 + static_cast<int>(rng.uniform(kCandidateCount))));
    }
    CHECK(mrr(predictions) >= hit_rate(predictions));
  }
}

TEST_CASE("metrics are permutation-invariant over the instance list") {
  std::vector<Prediction> predictions;
  Rng rng(7);
  for (int i = 0; i < 25; ++i) {
    predictions.push_back(
        prediction_with_gold_rank(1 + static_cast<int>(rng.uniform(kCandidateCount))));
  }
  const double h = hit_rate(predictions);
  const double m = mrr(predictions);
  rng.shuffle(predictions);
  CHECK(hit_rate(predictions) == doctest::Approx(h).epsilon(1e-15));
  CHECK(mrr(predictions) == doctest::Approx(m).epsilon(1e-15));
}

TEST_CASE("macro_average reproduces the reported aggregates") {
  CHECK(round_decimals(macro_average({{"en", 61.1}, {"it", 59.3}, {"fa", 43.0}}), 1) == 54.5);
  CHECK(round_decimals(macro_average({{"en", 69.1}, {"it", 63.3}, {"fa", 40.0}}), 1) == 57.5);
  CHECK(macro_average({{"en", 77.25}}) == 77.25);
  CHECK(fails_with(ErrorKind::Eval, [] { macro_average({}); }));
}

TEST_CASE("pearson coefficient") {
  const std::vector<double> a = {1, 2, 3};
  CHECK(pearson(a, a) == doctest::Approx(1.0).epsilon(1e-12));
  const std::vector<double> neg = {-1, -2, -3};
  CHECK(pearson(a, neg) == doctest::Approx(-1.0).epsilon(1e-12));

  // Oracle: direct formula. Deviations (-1,0,1) and (-7/3,-1/3,10/3)... for
  // b=(2,4,7): cov = 5, var_a = 2, var_b = 38/3.
  const std::vector<double> b = {2, 4, 7};
  const double expected = 5.0 / std::sqrt(2.0 * (38.0 / 3.0));
  CHECK(pearson(a, b) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(pearson(a, b) == doctest::Approx(0.993399).epsilon(1e-6));

  const std::vector<double> flat = {4, 4, 4};
  CHECK(fails_with(ErrorKind::Degenerate, [&] { pearson(a, flat); }));
  const std::vector<double> shorter = {1, 2};
  CHECK(fails_with(ErrorKind::Shape, [&] { pearson(a, shorter); }));
  const std::vector<double> one = {1};
  CHECK(fails_with(ErrorKind::Eval, [&] { pearson(one, one); }));
}

TEST_CASE("grid search structure and planted-signal behaviour") {
  const testkit::Fixture fixture =
      testkit::make_fixture_dataset(200, testkit::PlantMode::ImageContext, 2023);
  Provider provider(fixture.store, nullptr);
  SimilarityScorer scorer(provider, fixture.vl_model, fixture.l_model);
  const auto rows = grid_search(fixture.dataset, &fixture.inventory, scorer, 0, 0, 0);

  REQUIRE(rows.size() == 7);  // all of {0,1}^3 minus the zero triple

  // Sorted by accuracy desc, then lexicographically descending weights.
  for (size_t i = 1; i < rows.size(); ++i) {
    const auto& prev = rows[i - 1];
    const auto& cur = rows[i];
    const bool ordered =
        prev.accuracy > cur.accuracy ||
        (prev.accuracy == cur.accuracy &&
         std::make_tuple(prev.weights.ic, prev.weights.ig, prev.weights.cg) >
             std::make_tuple(cur.weights.ic, cur.weights.ig, cur.weights.cg));
    CHECK(ordered);
  }

  size_t gold_at_zero = 0;
  for (const auto& instance : fixture.dataset.instances) {
    if (instance.gold_index() == 0) ++gold_at_zero;
  }
  const double tie_accuracy =
      static_cast<double>(gold_at_zero) / fixture.dataset.instances.size();

  for (const auto& row : rows) {
    if (row.weights.ic == 1.0) {
      CHECK(row.accuracy == 1.0);  // planted image-context signal
    }
    if (row.weights.ic == 0.0 && row.weights.ig == 1.0 && row.weights.cg == 1.0) {
      CHECK(row.accuracy < 1.0);
    }
    if (row.weights.ic == 0.0 && row.weights.ig == 0.0 && row.weights.cg == 1.0) {
      // Context-gloss similarity is candidate-independent: every instance
      // ties and resolves to index 0.
      CHECK(row.accuracy == doctest::Approx(tie_accuracy).epsilon(1e-12));
    }
  }
}

TEST_CASE("grid row (1,0,0) equals an independent ranking run") {
  const testkit::Fixture fixture =
      testkit::make_fixture_dataset(80, testkit::PlantMode::Noise, 88);
  Provider provider(fixture.store, nullptr);
  SimilarityScorer scorer(provider, fixture.vl_model, fixture.l_model);
  const auto rows = grid_search(fixture.dataset, &fixture.inventory, scorer, 0, 0, 0);

  const auto predictions = rank_batch(fixture.dataset.instances, &fixture.inventory,
                                      {1, 0, 0}, scorer, 1);
  const double expected = hit_rate(predictions);
  bool found = false;
  for (const auto& row : rows) {
    if (row.weights.ic == 1.0 && row.weights.ig == 0.0 && row.weights.cg == 0.0) {
      CHECK(row.accuracy == doctest::Approx(expected).epsilon(1e-12));
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("grid search subsample is seeded and bounded") {
  const testkit::Fixture fixture =
      testkit::make_fixture_dataset(50, testkit::PlantMode::Noise, 12);
  Provider provider(fixture.store, nullptr);
  SimilarityScorer scorer(provider, fixture.vl_model, fixture.l_model);
  const auto a = grid_search(fixture.dataset, &fixture.inventory, scorer, 20, 9, 0);
  const auto b = grid_search(fixture.dataset, &fixture.inventory, scorer, 20, 9, 0);
  REQUIRE(a.size() == 7);
  for (size_t i = 0; i < 7; ++i) CHECK(a[i].accuracy == b[i].accuracy);

  // Gold labels are required.
  Dataset no_gold = fixture.dataset;
  for (auto& instance : no_gold.instances) instance.gold.reset();
  CHECK(fails_with(ErrorKind::Eval, [&] {
    grid_search(no_gold, &fixture.inventory, scorer, 0, 0, 0);
  }));
}

TEST_CASE("dataset_stats polysemy, nouns, coverage") {
  SenseInventory inventory = SenseInventory::from_json(nlohmann::json::parse(R"({
    "quad": [
      {"sense_id": "q1", "pos": "n", "glosses": ["a"]},
      {"sense_id": "q2", "pos": "n", "glosses": ["b"]},
      {"sense_id": "q3", "pos": "v", "glosses": ["c"]},
      {"sense_id": "q4", "pos": "n", "glosses": ["d"]}
    ],
    "duo": [
      {"sense_id": "d1", "pos": "v", "glosses": ["a"]},
      {"sense_id": "d2", "pos": "n", "glosses": ["b"]}
    ],
    "hexa": [
      {"sense_id": "h1", "pos": "NOUN", "glosses": ["a"]},
      {"sense_id": "h2", "pos": "n", "glosses": ["b"]},
      {"sense_id": "h3", "pos": "n", "glosses": ["c"]},
      {"sense_id": "h4", "pos": "n", "glosses": ["d"]},
      {"sense_id": "h5", "pos": "n", "glosses": ["e"]},
      {"sense_id": "h6", "pos": "n", "glosses": ["f"]}
    ]
  })"));

  auto make_dataset = [](const std::vector<std::string>& focus_words) {
    Dataset dataset;
    dataset.language = "en";
    for (const auto& word : focus_words) {
      Instance instance;
      instance.focus_word = word;
      instance.context = "the " + word;
      instance.language = "en";
      for (int i = 0; i < kCandidateCount; ++i) {
        instance.candidates.push_back(word + std::to_string(i));
      }
      dataset.instances.push_back(std::move(instance));
    }
    return dataset;
  };

  SUBCASE("single word repeated") {
    const DatasetStats stats = dataset_stats(make_dataset({"quad", "quad", "quad"}), inventory);
    CHECK(stats.mean_polysemy == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(stats.coverage == 1.0);
    CHECK(stats.noun_fraction == 1.0);  // first sense of quad is a noun
  }

  SUBCASE("mixed lemmas with equal counts average their sense counts") {
    const DatasetStats stats =
        dataset_stats(make_dataset({"duo", "hexa", "duo", "hexa"}), inventory);
    CHECK(stats.mean_polysemy == doctest::Approx(4.0).epsilon(1e-12));  // (2+6)/2
    // First sense of duo is a verb, of hexa a noun (case-insensitive).
    CHECK(stats.noun_fraction == doctest::Approx(0.5).epsilon(1e-12));
  }

  SUBCASE("unknown lemmas lower coverage and drop out of the mean") {
    const DatasetStats stats =
        dataset_stats(make_dataset({"quad", "mystery", "enigma", "riddle"}), inventory);
    CHECK(stats.coverage == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(stats.mean_polysemy == doctest::Approx(4.0).epsilon(1e-12));
  }

  SUBCASE("zero coverage reports absent statistics") {
    const DatasetStats stats = dataset_stats(make_dataset({"x", "y"}), inventory);
    CHECK(stats.coverage == 0.0);
    CHECK_FALSE(stats.mean_polysemy.has_value());
    CHECK_FALSE(stats.noun_fraction.has_value());
  }

  SUBCASE("empty dataset errors") {
    Dataset empty;
    CHECK(fails_with(ErrorKind::Eval, [&] { dataset_stats(empty, inventory); }));
  }
}

TEST_CASE("report aggregation and byte-stable serialization") {
  std::vector<std::pair<std::string, std::vector<Prediction>>> per_language;
  per_language.emplace_back(
      "it", std::vector<Prediction>{prediction_with_gold_rank(1), prediction_with_gold_rank(2)});
  per_language.emplace_back(
      "en", std::vector<Prediction>{prediction_with_gold_rank(1), prediction_with_gold_rank(1)});
  per_language.emplace_back(
      "fa", std::vector<Prediction>{prediction_with_gold_rank(5), prediction_with_gold_rank(2)});

  SystemConfig config;
  config.models = default_model_registry();
  const EvalReport report = build_report(per_language, config_echo(config), 42, 3, 1);

  REQUIRE(report.languages.size() == 3);
  CHECK(report.languages[0].language == "en");  // sorted
  CHECK(*report.languages[0].hit_rate == 1.0);
  CHECK(*report.languages[1].hit_rate == 0.0);  // fa: gold at ranks 5 and 2
  CHECK(*report.languages[2].hit_rate == 0.5);  // it
  REQUIRE(report.macro_avg.has_value());
  CHECK(*report.macro_avg == doctest::Approx((1.0 + 0.0 + 0.5) / 3.0).epsilon(1e-12));
  CHECK(report.pearson_acc_mrr.has_value());
  CHECK(report.seed == 42);
  CHECK(report.gloss_fallbacks == 3);
  CHECK(report.truncations == 1);
  for (const auto& block : report.languages) {
    CHECK(*block.mrr >= *block.hit_rate);
  }

  const std::string once = report_to_json(report);
  const std::string twice = report_to_json(build_report(per_language, config_echo(config), 42, 3, 1));
  CHECK(once == twice);
  CHECK(once.find("\"macro_avg\"") != std::string::npos);

  const std::string table = report_to_table(report);
  CHECK(table.find("en") != std::string::npos);
  CHECK(table.find("macro") != std::string::npos);
}

TEST_CASE("config echo hides weights for gen/seg") {
  SystemConfig config;
  config.models = default_model_registry();
  config.weights = Weights{1, 1, 1};
  config.system = SystemId::Gen;
  CHECK(config_echo(config)["weights"].is_null());
  CHECK(config_echo(config).contains("gen"));
  config.system = SystemId::Seg;
  CHECK(config_echo(config)["weights"].is_null());
  config.system = SystemId::Tr;
  CHECK_FALSE(config_echo(config)["weights"].is_null());
}

TEST_CASE("prediction dump lists ranked ids and totals") {
  Instance instance;
  instance.focus_word = "w";
  instance.context = "w";
  instance.language = "en";
  instance.candidates = {"a", "b", "c"};
  const Prediction prediction = make_prediction(7, instance, {0.25, 0.75, 0.5});
  const std::string tsv = predictions_to_tsv({&instance}, {prediction});
  CHECK(tsv == "7\tb,c,a\t0.75,0.5,0.25\n");
}

TEST_CASE("report without gold labels reports counts only") {
  std::vector<Prediction> bare(3);
  for (auto& p : bare) {
    p.totals = {1, 0};
    p.ranking = {0, 1};
    p.gold_index = -1;
  }
  const EvalReport report = build_report({{"en", bare}}, nlohmann::json::object(), 0, 0, 0);
  CHECK(report.languages[0].n == 3);
  CHECK_FALSE(report.languages[0].hit_rate.has_value());
  CHECK_FALSE(report.macro_avg.has_value());
  CHECK_FALSE(report.pearson_acc_mrr.has_value());
}
