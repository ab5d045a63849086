#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "vwsd/augment.hpp"
#include "vwsd/error.hpp"
#include "vwsd/embedding.hpp"
#include "vwsd/metrics.hpp"
#include "vwsd/provider.hpp"
#include "vwsd/prompt.hpp"
#include "vwsd/scoring.hpp"
#include "vwsd/testkit/fixture.hpp"
#include "vwsd/testkit/mock.hpp"
#include "vwsd/testkit/server.hpp"
#include "vwsd/util.hpp"

using namespace vwsd;

TEST_CASE("mock_embed is a pure function of its inputs") {
  const EmbeddingVector once = testkit::mock_embed("m", Modality::Text, "input", 3, 32);
  const EmbeddingVector twice = testkit::mock_embed("m", Modality::Text, "input", 3, 32);
  CHECK(once.values == twice.values);
  CHECK(cosine(once, twice) == doctest::Approx(1.0).epsilon(1e-12));

  // Every argument feeds the stream.
  CHECK(testkit::mock_embed("m2", Modality::Text, "input", 3, 32).values != once.values);
  CHECK(testkit::mock_embed("m", Modality::Image, "input", 3, 32).values != once.values);
  CHECK(testkit::mock_embed("m", Modality::Text, "other", 3, 32).values != once.values);
  CHECK(testkit::mock_embed("m", Modality::Text, "input", 4, 32).values != once.values);
}

TEST_CASE("mock_embed pinned fixture values") {
  // Frozen once from the pinned fnv1a64+splitmix64 stream; any drift in the
  // generator breaks cross-platform fixture stability.
  const EmbeddingVector a = testkit::mock_embed("mock-vl", Modality::Text, "alpha", 7, 64);
  CHECK(a.values[0] == static_cast<float>(0.024144161492586136));
  CHECK(a.values[1] == static_cast<float>(-0.13104274868965149));
  CHECK(a.values[2] == static_cast<float>(0.2200901210308075));
  CHECK(a.values[3] == static_cast<float>(0.10733774304389954));

  const EmbeddingVector b = testkit::mock_embed("mock-vl", Modality::Text, "beta", 7, 64);
  const EmbeddingVector c = testkit::mock_embed("mock-vl", Modality::Image, "alpha", 7, 64);
  const EmbeddingVector d = testkit::mock_embed("mock-l", Modality::Text, "alpha", 7, 64);
  CHECK(cosine(a, b) == doctest::Approx(0.191974620965214).epsilon(1e-12));
  CHECK(cosine(a, c) == doctest::Approx(-0.075559623509791007).epsilon(1e-12));
  CHECK(cosine(a, d) == doctest::Approx(0.20712927361847605).epsilon(1e-12));

  // Distinct inputs stay well away from collision at dim 64.
  CHECK(std::fabs(cosine(a, b)) < 0.9);

  // Unit norm.
  double norm_sq = 0.0;
  for (float v : a.values) norm_sq += static_cast<double>(v) * v;
  CHECK(norm_sq == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("mock_embed at dim 1 is a sign") {
  const EmbeddingVector one = testkit::mock_embed("m", Modality::Text, "x", 0, 1);
  CHECK(std::fabs(one.values[0]) == 1.0f);
}

TEST_CASE("fixture: image-context mode makes gold win under every w_ic=1 row") {
  const testkit::Fixture fixture =
      testkit::make_fixture_dataset(120, testkit::PlantMode::ImageContext, 99);
  Provider provider(fixture.store, nullptr);
  SimilarityScorer scorer(provider, fixture.vl_model, fixture.l_model);
  for (const Weights& weights :
       {Weights{1, 1, 1}, Weights{1, 1, 0}, Weights{1, 0, 1}, Weights{1, 0, 0}}) {
    const auto predictions =
        rank_batch(fixture.dataset.instances, &fixture.inventory, weights, scorer, 0);
    CHECK(hit_rate(predictions) == 1.0);
  }
}

TEST_CASE("fixture: image-gloss mode rewards (0,1,0) scoring") {
  const testkit::Fixture fixture =
      testkit::make_fixture_dataset(120, testkit::PlantMode::ImageGloss, 7);
  Provider provider(fixture.store, nullptr);
  SimilarityScorer scorer(provider, fixture.vl_model, fixture.l_model);
  const auto predictions =
      rank_batch(fixture.dataset.instances, &fixture.inventory, {0, 1, 0}, scorer, 0);
  CHECK(hit_rate(predictions) == 1.0);
}

TEST_CASE("fixture: noise mode sits at chance level") {
  const testkit::Fixture fixture =
      testkit::make_fixture_dataset(400, testkit::PlantMode::Noise, 55);
  Provider provider(fixture.store, nullptr);
  SimilarityScorer scorer(provider, fixture.vl_model, fixture.l_model);
  const auto predictions =
      rank_batch(fixture.dataset.instances, &fixture.inventory, {1, 1, 1}, scorer, 0);
  const double accuracy = hit_rate(predictions);
  // 3 sigma around 1/10 for n = 400.
  CHECK(accuracy > 0.1 - 0.045);
  CHECK(accuracy < 0.1 + 0.045);
}

TEST_CASE("fixture generation is reproducible, varying with the seed") {
  const auto dir = testutil::make_temp_dir("fixrep");
  const testkit::Fixture a = testkit::make_fixture_dataset(30, testkit::PlantMode::Noise, 1);
  const testkit::Fixture b = testkit::make_fixture_dataset(30, testkit::PlantMode::Noise, 1);
  const testkit::Fixture c = testkit::make_fixture_dataset(30, testkit::PlantMode::Noise, 2);
  save_dataset(a.dataset, dir / "a.tsv", dir / "a.gold");
  save_dataset(b.dataset, dir / "b.tsv", dir / "b.gold");
  save_dataset(c.dataset, dir / "c.tsv", dir / "c.gold");
  CHECK(testutil::slurp(dir / "a.tsv") == testutil::slurp(dir / "b.tsv"));
  CHECK(testutil::slurp(dir / "a.gold") == testutil::slurp(dir / "b.gold"));
  CHECK(testutil::slurp(dir / "a.gold") != testutil::slurp(dir / "c.gold"));

  const auto va = a.store->get(a.vl_model, Modality::Text, a.dataset.instances[0].context);
  const auto vb = b.store->get(b.vl_model, Modality::Text, b.dataset.instances[0].context);
  REQUIRE(va.has_value());
  REQUIRE(vb.has_value());
  CHECK(va->values == vb->values);
}

TEST_CASE("fixture files round-trip through the loader") {
  const auto dir = testutil::make_temp_dir("fixfiles");
  testkit::FixtureOptions options;
  options.store_path = dir / "store.vwse";
  const testkit::Fixture fixture =
      testkit::make_fixture_dataset(12, testkit::PlantMode::ImageContext, 4, options);
  testkit::write_fixture_files(fixture, dir);

  const auto refs = load_dataset_manifest(dir / "manifest.txt");
  REQUIRE(refs.size() == 1);
  const Dataset loaded = load_dataset(refs[0].data, refs[0].gold, refs[0].language);
  CHECK(loaded.instances.size() == 12);

  // The stored embeddings power a full scoring pass after reload.
  auto store = EmbeddingStore::open(dir / "store.vwse", 0);
  Provider provider(store, nullptr);
  SimilarityScorer scorer(provider, fixture.vl_model, fixture.l_model);
  const SenseInventory inventory = SenseInventory::load(dir / "inventory.json");
  const auto predictions = rank_batch(loaded.instances, &inventory, {1, 0, 0}, scorer, 0);
  CHECK(hit_rate(predictions) == 1.0);
}

TEST_CASE("wire conformance: served vectors equal in-process vectors bit-exactly") {
  testkit::MockServer server(21, 16);
  server.start();

  auto store = EmbeddingStore::memory(16);
  auto backend = std::make_shared<HttpEmbedBackend>(server.endpoint(), 3);
  Provider provider(store, backend);

  SUBCASE("text modality") {
    const auto fetched = provider.fetch("clip-en", {{Modality::Text, "baseball bat"}});
    const EmbeddingVector direct =
        testkit::mock_embed("clip-en", Modality::Text, "baseball bat", 21, 16);
    CHECK(fetched[0].values == direct.values);
  }

  SUBCASE("image modality round-trips through base64") {
    const std::string image_id = "weird \xf0\x9f\x8c\x8d bytes.jpg";
    const auto fetched = provider.fetch("clip-en", {{Modality::Image, image_id}});
    const EmbeddingVector direct =
        testkit::mock_embed("clip-en", Modality::Image, image_id, 21, 16);
    CHECK(fetched[0].values == direct.values);
  }

  SUBCASE("write-through cache: second pass issues zero requests") {
    provider.fetch("clip-en", {{Modality::Text, "a"}, {Modality::Text, "b"}});
    const size_t after_first = server.embed_requests();
    provider.fetch("clip-en", {{Modality::Text, "a"}, {Modality::Text, "b"}});
    CHECK(server.embed_requests() == after_first);
    CHECK(backend->network_calls() == after_first);
  }

  server.stop();
}

TEST_CASE("served generation and translation match the in-process mocks") {
  testkit::MockServer server(0, 8);
  server.start();

  HttpGenerationService generation(server.endpoint(), 3);
  const std::string prompt = build_prompt({"baseball bat", "andromeda tree"});
  const std::string response = generation.generate(prompt);
  testkit::MockGenerationService in_process;
  CHECK(response == in_process.generate(prompt));
  const auto defs = parse_definitions(response, {"baseball bat", "andromeda tree"});
  CHECK(defs.at("baseball bat") == testkit::mock_definition("baseball bat"));

  HttpTranslationService translation(server.endpoint(), 3);
  CHECK(translation.translate("partita", "it", "en") ==
        testkit::mock_translation("partita", "it", "en"));
  CHECK(server.generate_requests() == 1);
  CHECK(server.translate_requests() == 1);

  server.stop();
}

TEST_CASE("server rejects malformed requests and the client reports attempts") {
  testkit::MockServer server(0, 8);
  server.start();
  // A prompt without the expected header draws a 400, which the client
  // retries before giving up.
  HttpGenerationService generation(server.endpoint(), 2);
  try {
    generation.generate("not the template");
    FAIL("expected provider error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Provider);
    CHECK(std::string(e.what()).find("2 attempts") != std::string::npos);
  }
  CHECK(server.generate_requests() == 2);
  server.stop();
}
