#include "vwsd/testkit/fixture.hpp"

#include <cmath>
#include <map>

#include "vwsd/embedding.hpp"
#include "vwsd/error.hpp"
#include "vwsd/util.hpp"

namespace vwsd::testkit {

namespace {

std::vector<float> random_unit(Rng& rng, uint32_t dim) {
  std::vector<double> raw(dim);
  double norm_sq = 0.0;
  do {
    norm_sq = 0.0;
    for (uint32_t i = 0; i < dim; ++i) {
      raw[i] = rng.next_signed_unit();
      norm_sq += raw[i] * raw[i];
    }
  } while (norm_sq == 0.0);
  const double norm = std::sqrt(norm_sq);
  std::vector<float> values(dim);
  for (uint32_t i = 0; i < dim; ++i) values[i] = static_cast<float>(raw[i] / norm);
  return values;
}

// Local totals for planted-property verification, computed over raw value
// arrays before anything reaches the store.
std::vector<double> local_totals(const std::vector<std::vector<float>>& images,
                                 const std::vector<float>& ctx_vl,
                                 const std::vector<float>& ctx_l,
                                 const std::vector<std::vector<float>>& gloss_vl,
                                 const std::vector<std::vector<float>>& gloss_l,
                                 const Weights& weights) {
  std::vector<double> totals;
  totals.reserve(images.size());
  for (const auto& image : images) {
    double gloss_term = 0.0;
    if (!gloss_vl.empty()) {
      double best = -1e300;
      for (size_t g = 0; g < gloss_vl.size(); ++g) {
        const double value = weights.ig * cosine(image, gloss_vl[g]) +
                             weights.cg * cosine(ctx_l, gloss_l[g]);
        if (value > best) best = value;
      }
      gloss_term = best;
    }
    totals.push_back(gloss_term + weights.ic * cosine(image, ctx_vl));
  }
  return totals;
}

bool gold_strictly_top(const std::vector<double>& totals, size_t gold) {
  for (size_t i = 0; i < totals.size(); ++i) {
    if (i == gold) continue;
    if (!(totals[gold] > totals[i])) return false;
  }
  return true;
}

}  // namespace

Fixture make_fixture_dataset(size_t n, PlantMode mode, uint64_t seed,
                             FixtureOptions options) {
  if (n < 1) fail(ErrorKind::Validation, "fixture needs at least one instance");
  if (options.dim == 0) fail(ErrorKind::Config, "fixture dim must be > 0");

  Fixture fixture;
  fixture.vl_model = options.vl_model;
  fixture.l_model = options.l_model;
  fixture.store = options.store_path.empty()
                      ? EmbeddingStore::memory(options.dim)
                      : EmbeddingStore::open(options.store_path, options.dim);
  fixture.dataset.name = "fixture";
  fixture.dataset.language = "en";
  fixture.dataset.split = Split::Test;

  Rng rng(mix_seed(fnv1a64("fixture"), seed));

  // Planted guarantees are verified against the binarized weight grid.
  std::vector<Weights> checks;
  if (mode == PlantMode::ImageContext) {
    checks = {{1, 1, 1}, {1, 1, 0}, {1, 0, 1}, {1, 0, 0}};
  } else if (mode == PlantMode::ImageGloss) {
    checks = {{0, 1, 0}};
  }

  for (size_t k = 0; k < n; ++k) {
    const std::string focus = "word" + std::to_string(k);
    const std::string context = "ctx" + std::to_string(k) + " " + focus;

    const size_t sense_count = 1 + k % 4;
    std::vector<SenseEntry> senses;
    std::vector<std::string> gloss_texts;
    for (size_t j = 0; j < sense_count; ++j) {
      SenseEntry sense;
      sense.sense_id = "s" + std::to_string(k) + "_" + std::to_string(j);
      sense.lemma = focus;
      sense.pos = j == 0 ? "n" : "v";
      sense.language = "en";
      sense.glosses.push_back("sense " + std::to_string(j) + " of " + focus);
      if ((k + j) % 2 == 1) {
        sense.glosses.push_back("alternate gloss " + std::to_string(j) + " of " + focus);
      }
      gloss_texts.push_back(sense.glosses.front());
      senses.push_back(std::move(sense));
    }
    fixture.inventory.add(focus, std::move(senses));

    std::vector<std::string> candidates;
    for (int j = 0; j < kCandidateCount; ++j) {
      candidates.push_back("img" + std::to_string(k) + "_" + std::to_string(j) + ".jpg");
    }
    const size_t gold_pos = rng.uniform(kCandidateCount);

    const std::vector<float> ctx_vl = random_unit(rng, options.dim);
    const std::vector<float> ctx_l = random_unit(rng, options.dim);
    std::vector<std::vector<float>> gloss_vl, gloss_l;
    for (size_t j = 0; j < gloss_texts.size(); ++j) {
      gloss_vl.push_back(random_unit(rng, options.dim));
      gloss_l.push_back(random_unit(rng, options.dim));
    }
    const size_t correct_sense = rng.uniform(gloss_texts.size());

    std::vector<std::vector<float>> images;
    auto plant = [&] {
      images.clear();
      for (int j = 0; j < kCandidateCount; ++j) {
        images.push_back(random_unit(rng, options.dim));
      }
      if (mode == PlantMode::ImageContext) {
        images[gold_pos] = ctx_vl;
      } else if (mode == PlantMode::ImageGloss) {
        images[gold_pos] = gloss_vl[correct_sense];
      }
    };
    plant();

    if (!checks.empty()) {
      int attempts = 0;
      while (true) {
        bool ok = true;
        for (const auto& weights : checks) {
          if (!gold_strictly_top(
                  local_totals(images, ctx_vl, ctx_l, gloss_vl, gloss_l, weights),
                  gold_pos)) {
            ok = false;
            break;
          }
        }
        if (ok) break;
        if (++attempts > 200) {
          fail(ErrorKind::Build, "could not plant fixture signal for instance " +
                                     std::to_string(k));
        }
        plant();
      }
    }

    auto put = [&](Modality modality, const std::string& key,
                   const std::vector<float>& values, const std::string& model) {
      fixture.store->put(make_embedding(model, modality, key, values));
    };
    put(Modality::Text, context, ctx_vl, options.vl_model);
    put(Modality::Text, context, ctx_l, options.l_model);
    for (size_t j = 0; j < gloss_texts.size(); ++j) {
      put(Modality::Text, gloss_texts[j], gloss_vl[j], options.vl_model);
      put(Modality::Text, gloss_texts[j], gloss_l[j], options.l_model);
    }
    for (int j = 0; j < kCandidateCount; ++j) {
      put(Modality::Image, candidates[j], images[j], options.vl_model);
    }

    Instance instance;
    instance.focus_word = focus;
    instance.context = context;
    instance.language = fixture.dataset.language;
    instance.candidates = candidates;
    instance.gold = candidates[gold_pos];
    refresh_focus_flag(instance);
    validate_instance(instance);
    fixture.dataset.instances.push_back(std::move(instance));
  }
  return fixture;
}

void write_fixture_files(const Fixture& fixture, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  save_dataset(fixture.dataset, dir / "data.tsv", dir / "gold.txt");
  fixture.inventory.save(dir / "inventory.json");
  DatasetRef ref;
  ref.name = fixture.dataset.name;
  ref.language = fixture.dataset.language;
  ref.split = fixture.dataset.split;
  ref.data = dir / "data.tsv";
  ref.gold = dir / "gold.txt";
  save_dataset_manifest({ref}, dir / "manifest.txt");
}

}  // namespace vwsd::testkit
