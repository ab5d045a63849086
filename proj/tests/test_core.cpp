#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <limits>
#include <set>

#include "helpers.hpp"
#include "vwsd/config.hpp"
#include "vwsd/dataset.hpp"
#include "vwsd/error.hpp"
#include "vwsd/kvfile.hpp"
#include "vwsd/types.hpp"
#include "vwsd/util.hpp"

using namespace vwsd;
using testutil::make_temp_dir;
using testutil::tsv_line;
using testutil::write_file;

namespace {

bool fails_with(ErrorKind kind, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

}  // namespace

TEST_CASE("load_dataset parses the release TSV format") {
  const auto dir = make_temp_dir("core");
  const auto data = write_file(dir, "data.tsv", tsv_line("bat", "baseball bat", "img") + "\n");
  const auto gold = write_file(dir, "gold.txt", "img3.jpg\n");

  const Dataset dataset = load_dataset(data, gold, "en");
  REQUIRE(dataset.instances.size() == 1);
  const Instance& instance = dataset.instances[0];
  CHECK(instance.focus_word == "bat");
  CHECK(instance.context == "baseball bat");
  CHECK(instance.gold == "img3.jpg");
  CHECK(instance.gold_index() == 2);
  CHECK(instance.candidates.size() == 10);
  CHECK(instance.candidates.front() == "img1.jpg");
  CHECK(instance.candidates.back() == "img10.jpg");
  CHECK_FALSE(instance.focus_not_in_context);
}

TEST_CASE("load_dataset without gold yields prediction-only instances") {
  const auto dir = make_temp_dir("core");
  const auto data = write_file(dir, "data.tsv",
                               tsv_line("bat", "baseball bat", "a") + "\n" +
                                   tsv_line("play", "good play", "b") + "\n");
  const Dataset dataset = load_dataset(data, std::nullopt, "en");
  REQUIRE(dataset.instances.size() == 2);
  for (const auto& instance : dataset.instances) {
    CHECK_FALSE(instance.gold.has_value());
  }
}

TEST_CASE("load_dataset errors name the offending line") {
  const auto dir = make_temp_dir("core");

  SUBCASE("11 fields") {
    std::string short_line = "bat\tbaseball bat";
    for (int i = 1; i <= 9; ++i) short_line += "\timg" + std::to_string(i) + ".jpg";
    const auto data = write_file(dir, "data.tsv",
                                 tsv_line("bat", "baseball bat", "x") + "\n" + short_line + "\n");
    try {
      load_dataset(data, std::nullopt, "en");
      FAIL("expected parse error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Parse);
      CHECK(std::string(e.what()).find(":2") != std::string::npos);
    }
  }

  SUBCASE("gold id not among candidates") {
    const auto data = write_file(dir, "data.tsv", tsv_line("bat", "baseball bat", "x") + "\n");
    const auto gold = write_file(dir, "gold.txt", "unrelated.jpg\n");
    CHECK(fails_with(ErrorKind::Integrity, [&] { load_dataset(data, gold, "en"); }));
  }

  SUBCASE("line count mismatch") {
    const auto data = write_file(dir, "data.tsv", tsv_line("bat", "baseball bat", "x") + "\n");
    const auto gold = write_file(dir, "gold.txt", "x1.jpg\nx2.jpg\n");
    CHECK(fails_with(ErrorKind::Integrity, [&] { load_dataset(data, gold, "en"); }));
  }

  SUBCASE("duplicate candidate id") {
    std::string line = "bat\tbaseball bat";
    for (int i = 0; i < 10; ++i) line += "\tsame.jpg";
    const auto data = write_file(dir, "data.tsv", line + "\n");
    CHECK(fails_with(ErrorKind::Validation, [&] { load_dataset(data, std::nullopt, "en"); }));
  }
}

TEST_CASE("focus word absent from context is flagged, not rejected") {
  const auto dir = make_temp_dir("core");
  const auto data = write_file(dir, "data.tsv", tsv_line("shorea", "tropical genus", "img") + "\n");
  const Dataset dataset = load_dataset(data, std::nullopt, "en");
  CHECK(dataset.instances[0].focus_not_in_context);

  // Case-insensitive match does not trip the flag.
  const auto data2 = write_file(dir, "data2.tsv", tsv_line("Bat", "baseball bat", "img") + "\n");
  CHECK_FALSE(load_dataset(data2, std::nullopt, "en").instances[0].focus_not_in_context);
}

TEST_CASE("dataset round-trips byte-for-byte") {
  const auto dir = make_temp_dir("core");
  const std::string content = tsv_line("bat", "baseball bat", "img") + "\n" +
                              tsv_line("play", "good play", "pic") + "\n";
  const auto data = write_file(dir, "data.tsv", content);
  const auto gold = write_file(dir, "gold.txt", "img7.jpg\npic2.jpg\n");

  const Dataset dataset = load_dataset(data, gold, "en");
  save_dataset(dataset, dir / "copy.tsv", dir / "copy.gold");
  CHECK(testutil::slurp(dir / "copy.tsv") == content);
  CHECK(testutil::slurp(dir / "copy.gold") == "img7.jpg\npic2.jpg\n");

  // Loading the copy yields identical field values.
  const Dataset reloaded = load_dataset(dir / "copy.tsv", dir / "copy.gold", "en");
  REQUIRE(reloaded.instances.size() == dataset.instances.size());
  for (size_t i = 0; i < dataset.instances.size(); ++i) {
    CHECK(reloaded.instances[i].focus_word == dataset.instances[i].focus_word);
    CHECK(reloaded.instances[i].context == dataset.instances[i].context);
    CHECK(reloaded.instances[i].candidates == dataset.instances[i].candidates);
    CHECK(reloaded.instances[i].gold == dataset.instances[i].gold);
  }
}

namespace {

Dataset synthetic_dataset(size_t n) {
  Dataset dataset;
  dataset.name = "synthetic";
  dataset.language = "en";
  for (size_t i = 0; i < n; ++i) {
    Instance instance;
    instance.focus_word = "w" + std::to_string(i);
    instance.context = "c w" + std::to_string(i);
    instance.language = "en";
    for (int j = 0; j < kCandidateCount; ++j) {
      instance.candidates.push_back("i" + std::to_string(i) + "_" + std::to_string(j));
    }
    instance.gold = instance.candidates[0];
    dataset.instances.push_back(std::move(instance));
  }
  return dataset;
}

}  // namespace

TEST_CASE("split_dev sizes and determinism") {
  const Dataset dataset = synthetic_dataset(12869);
  const DevSplit split = split_dev(dataset, 0.10, 7);
  CHECK(split.dev.instances.size() == 1287);  // round(0.10 * 12869)
  CHECK(split.train.instances.size() == 12869 - 1287);

  // Same seed, same membership.
  const DevSplit again = split_dev(dataset, 0.10, 7);
  REQUIRE(again.dev.instances.size() == split.dev.instances.size());
  for (size_t i = 0; i < split.dev.instances.size(); ++i) {
    CHECK(again.dev.instances[i].focus_word == split.dev.instances[i].focus_word);
  }

  // Partition: disjoint and exhaustive.
  std::set<std::string> seen;
  for (const auto& inst : split.dev.instances) seen.insert(inst.focus_word);
  for (const auto& inst : split.train.instances) {
    CHECK_FALSE(seen.contains(inst.focus_word));
    seen.insert(inst.focus_word);
  }
  CHECK(seen.size() == dataset.instances.size());
}

TEST_CASE("split_dev clamps degenerate sizes with a warning") {
  const Dataset tiny = synthetic_dataset(4);
  std::vector<std::string> warnings;
  const DevSplit split = split_dev(tiny, 0.01, 3, &warnings);
  CHECK(split.dev.instances.size() == 1);
  CHECK(warnings.size() == 1);

  CHECK(fails_with(ErrorKind::Config, [&] { split_dev(tiny, 0.0, 1); }));
  CHECK(fails_with(ErrorKind::Config, [&] { split_dev(tiny, 1.0, 1); }));
  CHECK(fails_with(ErrorKind::Config, [&] { split_dev(tiny, -0.5, 1); }));
}

TEST_CASE("weights validation") {
  validate_weights({1, 1, 1});
  validate_weights({1, 0, 0});
  CHECK(fails_with(ErrorKind::Config, [] { validate_weights({0, 0, 0}); }));
  CHECK(fails_with(ErrorKind::Config, [] { validate_weights({-1, 1, 1}); }));
  CHECK(fails_with(ErrorKind::Config, [] {
    validate_weights({std::numeric_limits<double>::quiet_NaN(), 1, 1});
  }));
  CHECK(fails_with(ErrorKind::Config, [] {
    validate_weights({std::numeric_limits<double>::infinity(), 1, 1});
  }));
}

TEST_CASE("dataset manifest blocks") {
  const auto dir = make_temp_dir("manifest");
  write_file(dir, "en.tsv", tsv_line("bat", "baseball bat", "e") + "\n");
  write_file(dir, "it.tsv", tsv_line("calcio", "partita calcio", "i") + "\n");
  const auto manifest = write_file(dir, "manifest.txt",
                                   "name = task-en\n"
                                   "language = en\n"
                                   "split = test\n"
                                   "data = en.tsv\n"
                                   "\n"
                                   "# second dataset\n"
                                   "name = task-it\n"
                                   "language = it\n"
                                   "split = test\n"
                                   "data = it.tsv\n");
  const auto refs = load_dataset_manifest(manifest);
  REQUIRE(refs.size() == 2);
  CHECK(refs[0].name == "task-en");
  CHECK(refs[0].language == "en");
  CHECK(refs[0].split == Split::Test);
  CHECK(refs[0].data == dir / "en.tsv");
  CHECK_FALSE(refs[0].gold.has_value());
  CHECK(refs[1].language == "it");

  const auto bad = write_file(dir, "bad.txt", "language = en\nwhatever = x\ndata = en.tsv\n");
  CHECK(fails_with(ErrorKind::Parse, [&] { load_dataset_manifest(bad); }));
}

TEST_CASE("config parsing and validation") {
  const SystemConfig config = config_from_kv(
      "system = tr-def\n"
      "seed = 42\n"
      "w_ic = 1\n"
      "w_ig = 0\n"
      "w_cg = 0\n"
      "gen_count = 15\n"
      "model.fa.vl = clipfa\n"
      "model.fa.l = parsbert\n",
      "test");
  CHECK(config.system == SystemId::TrDef);
  CHECK(config.seed == 42);
  REQUIRE(config.weights.has_value());
  CHECK(config.weights->ic == 1.0);
  CHECK(config.models.at("fa").vl == "clipfa");
  CHECK(config.models.at("en").vl == "clip-en");  // default registry survives

  CHECK(fails_with(ErrorKind::Config, [] {
    config_from_kv("w_ic = 0\nw_ig = 0\nw_cg = 0\n", "test");
  }));
  CHECK(fails_with(ErrorKind::Config, [] {
    config_from_kv("system = tr-def\nw_ic = 1\nw_ig = 1\nw_cg = 0\n", "test");
  }));
  CHECK(fails_with(ErrorKind::Config, [] { config_from_kv("nonsense = 1\n", "test"); }));
  CHECK(fails_with(ErrorKind::Config, [] { config_from_kv("gen_count = 0\n", "test"); }));
  CHECK(fails_with(ErrorKind::Unsupported, [] {
    config_from_kv("system = langspec-def\n", "test");
  }));
}

TEST_CASE("kv parser fundamentals") {
  const auto blocks = parse_kv_blocks("a = 1\nb = \"two words\"\n\n# comment\nc=3\n", "t");
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0].size() == 2);
  CHECK(blocks[0][1].second == "two words");
  CHECK(blocks[1][0].first == "c");
  CHECK(fails_with(ErrorKind::Parse, [] { parse_kv_blocks("no equals sign", "t"); }));
}

TEST_CASE("pinned rng basics") {
  Rng a(123), b(123);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng c(7);
  for (int i = 0; i < 1000; ++i) {
    const uint64_t v = c.uniform(10);
    CHECK(v < 10);
  }
  // sample_indices produces k distinct members of [0, n).
  Rng d(9);
  const auto picks = d.sample_indices(50, 20);
  CHECK(picks.size() == 20);
  CHECK(std::set<size_t>(picks.begin(), picks.end()).size() == 20);
}

TEST_CASE("base64 round trip against fixed vectors") {
  CHECK(base64_encode("") == "");
  CHECK(base64_encode("f") == "Zg==");
  CHECK(base64_encode("fo") == "Zm8=");
  CHECK(base64_encode("foo") == "Zm9v");
  CHECK(base64_encode("foob") == "Zm9vYg==");
  CHECK(base64_encode("fooba") == "Zm9vYmE=");
  CHECK(base64_encode("foobar") == "Zm9vYmFy");
  for (const std::string s : {std::string(""), std::string("a"), std::string("ab"),
                              std::string("abc"), std::string("\x01\x02binary\xff")}) {
    CHECK(base64_decode(base64_encode(s)) == s);
  }
  CHECK(fails_with(ErrorKind::Parse, [] { base64_decode("Zg="); }));
  CHECK(fails_with(ErrorKind::Parse, [] { base64_decode("Z!=="); }));
}
