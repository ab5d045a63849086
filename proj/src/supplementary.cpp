#include "vwsd/supplementary.hpp"

#include <unordered_set>

#include "json.hpp"
#include "vwsd/error.hpp"
#include "vwsd/util.hpp"

namespace vwsd {

std::vector<ImageMapping> load_image_mappings(const std::filesystem::path& path) {
  const std::string content = read_text_file(path.string());
  std::vector<ImageMapping> resource;
  size_t line_no = 0;
  std::unordered_set<std::string> synset_ids;
  for (const auto& line : split(content, '\n')) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::Parse, path.string() + ":" + std::to_string(line_no) +
                                 ": invalid JSON: " + e.what());
    }
    ImageMapping mapping;
    mapping.synset_id = doc.value("synset_id", "");
    if (mapping.synset_id.empty()) {
      fail(ErrorKind::Parse, path.string() + ":" + std::to_string(line_no) +
                                 ": missing synset_id");
    }
    if (!synset_ids.insert(mapping.synset_id).second) {
      fail(ErrorKind::Integrity, path.string() + ":" + std::to_string(line_no) +
                                     ": duplicate synset_id '" + mapping.synset_id + "'");
    }
    for (const auto& id : doc.value("image_ids", nlohmann::json::array())) {
      mapping.image_ids.push_back(id.get<std::string>());
    }
    for (const auto& lemma : doc.value("lemmas", nlohmann::json::array())) {
      mapping.lemmas.push_back(lemma.get<std::string>());
    }
    for (const auto& rel : doc.value("related", nlohmann::json::array())) {
      if (!rel.is_array() || rel.size() != 2) {
        fail(ErrorKind::Parse, path.string() + ":" + std::to_string(line_no) +
                                   ": related entries must be [synset_id, lemma] pairs");
      }
      mapping.related.emplace_back(rel[0].get<std::string>(), rel[1].get<std::string>());
    }
    if (mapping.image_ids.empty()) {
      fail(ErrorKind::Parse, path.string() + ":" + std::to_string(line_no) +
                                 ": image_ids must be nonempty");
    }
    if (mapping.lemmas.empty()) {
      fail(ErrorKind::Parse, path.string() + ":" + std::to_string(line_no) +
                                 ": lemmas must be nonempty");
    }
    resource.push_back(std::move(mapping));
  }
  if (resource.empty()) fail(ErrorKind::Parse, path.string() + ": empty resource");
  return resource;
}

Dataset build_supplementary(const std::vector<ImageMapping>& resource,
                            int per_pair_distractors, uint64_t seed,
                            std::vector<std::string>* warnings) {
  if (per_pair_distractors != kCandidateCount - 1) {
    fail(ErrorKind::Config, "per_pair_distractors must be " +
                                std::to_string(kCandidateCount - 1) +
                                " to form " + std::to_string(kCandidateCount) +
                                "-candidate instances");
  }

  // Distinct image pool across the whole resource.
  std::unordered_set<std::string> distinct;
  for (const auto& mapping : resource) {
    for (const auto& id : mapping.image_ids) distinct.insert(id);
  }
  if (distinct.size() < static_cast<size_t>(kCandidateCount)) {
    fail(ErrorKind::Build, "resource holds only " + std::to_string(distinct.size()) +
                               " distinct images; need at least " +
                               std::to_string(kCandidateCount));
  }

  Dataset dataset;
  dataset.name = "supplementary";
  dataset.language = "en";
  dataset.split = Split::Train;

  Rng rng(mix_seed(fnv1a64("build_supplementary"), seed));
  for (size_t s = 0; s < resource.size(); ++s) {
    const ImageMapping& base = resource[s];
    if (base.related.empty()) {
      if (warnings) {
        warnings->push_back("synset '" + base.synset_id +
                            "' has no related entries; skipped");
      }
      continue;
    }
    const std::string& base_lemma = base.lemmas.front();
    const std::string& related_lemma = base.related.front().second;

    // Distractor pool: every other synset's images, minus ids the base
    // synset also owns, deduplicated in resource order.
    std::vector<std::string> pool;
    std::unordered_set<std::string> own(base.image_ids.begin(), base.image_ids.end());
    std::unordered_set<std::string> pooled;
    for (size_t t = 0; t < resource.size(); ++t) {
      if (t == s) continue;
      for (const auto& id : resource[t].image_ids) {
        if (own.contains(id)) continue;
        if (pooled.insert(id).second) pool.push_back(id);
      }
    }
    if (pool.size() < static_cast<size_t>(per_pair_distractors)) {
      fail(ErrorKind::Build, "synset '" + base.synset_id + "' has only " +
                                 std::to_string(pool.size()) +
                                 " distractor images available; need " +
                                 std::to_string(per_pair_distractors));
    }

    for (const auto& gold : base.image_ids) {
      const std::vector<size_t> picks =
          rng.sample_indices(pool.size(), static_cast<size_t>(per_pair_distractors));
      std::vector<std::string> candidates;
      candidates.reserve(kCandidateCount);
      for (size_t idx : picks) candidates.push_back(pool[idx]);
      const size_t gold_pos = rng.uniform(kCandidateCount);
      candidates.insert(candidates.begin() + static_cast<long>(gold_pos), gold);

      Instance instance;
      instance.focus_word = base_lemma;
      instance.context = related_lemma + " " + base_lemma;
      instance.language = dataset.language;
      instance.candidates = std::move(candidates);
      instance.gold = gold;
      refresh_focus_flag(instance);
      validate_instance(instance);
      dataset.instances.push_back(std::move(instance));
    }
  }
  if (dataset.instances.empty()) {
    fail(ErrorKind::Build, "resource produced no instances (no related synsets?)");
  }
  return dataset;
}

}  // namespace vwsd
