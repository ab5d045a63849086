#include "vwsd/dataset.hpp"

#include <cmath>
#include <fstream>

#include "vwsd/error.hpp"
#include "vwsd/kvfile.hpp"
#include "vwsd/util.hpp"

namespace vwsd {

namespace fs = std::filesystem;

namespace {

constexpr int kFieldCount = 2 + kCandidateCount;

std::vector<std::string> read_lines(const fs::path& path) {
  std::string content = read_text_file(path.string());
  std::vector<std::string> lines = split(content, '\n');
  // Trailing newline produces one empty tail entry; drop it. Interior empty
  // lines stay visible so they trigger precise parse errors.
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  for (auto& line : lines) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
  }
  return lines;
}

}  // namespace

Dataset load_dataset(const fs::path& data_path,
                     const std::optional<fs::path>& gold_path,
                     const std::string& language) {
  if (!fs::exists(data_path)) {
    fail(ErrorKind::Parse, "data file does not exist: " + data_path.string());
  }
  const std::vector<std::string> lines = read_lines(data_path);
  if (lines.empty()) fail(ErrorKind::Parse, "empty data file: " + data_path.string());

  std::vector<std::string> gold_lines;
  if (gold_path) {
    gold_lines = read_lines(*gold_path);
    if (gold_lines.size() != lines.size()) {
      fail(ErrorKind::Integrity,
           "line-count mismatch: data has " + std::to_string(lines.size()) +
               " lines, gold has " + std::to_string(gold_lines.size()));
    }
  }

  Dataset dataset;
  dataset.name = data_path.stem().string();
  dataset.language = language;
  dataset.instances.reserve(lines.size());
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::vector<std::string> fields = split(lines[i], '\t');
    if (fields.size() != kFieldCount) {
      fail(ErrorKind::Parse, data_path.string() + ":" + std::to_string(i + 1) +
                                 ": expected " + std::to_string(kFieldCount) +
                                 " tab-separated fields, got " +
                                 std::to_string(fields.size()));
    }
    Instance instance;
    instance.focus_word = fields[0];
    instance.context = fields[1];
    instance.language = language;
    instance.candidates.assign(fields.begin() + 2, fields.end());
    if (gold_path) {
      const std::string& gold = gold_lines[i];
      instance.gold = gold;
      if (instance.gold_index() < 0) {
        fail(ErrorKind::Integrity,
             data_path.string() + ":" + std::to_string(i + 1) + ": gold id '" +
                 gold + "' is not among the line's candidates");
      }
    }
    refresh_focus_flag(instance);
    validate_instance(instance);
    dataset.instances.push_back(std::move(instance));
  }
  return dataset;
}

void save_dataset(const Dataset& dataset, const fs::path& data_path,
                  const std::optional<fs::path>& gold_path) {
  std::ofstream data(data_path, std::ios::binary);
  if (!data) fail(ErrorKind::Parse, "cannot write: " + data_path.string());
  std::ofstream gold;
  if (gold_path) {
    gold.open(*gold_path, std::ios::binary);
    if (!gold) fail(ErrorKind::Parse, "cannot write: " + gold_path->string());
  }
  for (const auto& instance : dataset.instances) {
    data << instance.focus_word << '\t' << instance.context;
    for (const auto& id : instance.candidates) data << '\t' << id;
    data << '\n';
    if (gold_path) {
      if (!instance.gold) {
        fail(ErrorKind::Integrity,
             "cannot write gold file: instance lacks a gold id");
      }
      gold << *instance.gold << '\n';
    }
  }
}

DevSplit split_dev(const Dataset& dataset, double fraction, uint64_t seed,
                   std::vector<std::string>* warnings) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    fail(ErrorKind::Config, "dev fraction must lie in (0, 1), got " +
                                format_double(fraction));
  }
  const size_t n = dataset.instances.size();
  if (n == 0) fail(ErrorKind::Validation, "cannot split an empty dataset");
  if (n < 2) fail(ErrorKind::Validation, "cannot split a single-instance dataset");

  size_t dev_size = static_cast<size_t>(std::llround(fraction * static_cast<double>(n)));
  if (dev_size == 0) {
    dev_size = 1;
    if (warnings) warnings->push_back("dev size rounded to 0; clamped to 1");
  }
  if (dev_size >= n) {
    dev_size = n - 1;
    if (warnings) warnings->push_back("dev size rounded to N; clamped to N-1");
  }

  Rng rng(mix_seed(fnv1a64("split_dev"), seed));
  const std::vector<size_t> picks = rng.sample_indices(n, dev_size);
  std::vector<bool> is_dev(n, false);
  for (size_t idx : picks) is_dev[idx] = true;

  DevSplit result;
  result.train.name = dataset.name;
  result.train.language = dataset.language;
  result.train.split = Split::Train;
  result.dev.name = dataset.name;
  result.dev.language = dataset.language;
  result.dev.split = Split::Dev;
  for (size_t i = 0; i < n; ++i) {
    (is_dev[i] ? result.dev : result.train).instances.push_back(dataset.instances[i]);
  }
  return result;
}

std::vector<DatasetRef> load_dataset_manifest(const fs::path& path) {
  const std::string content = read_text_file(path.string());
  const fs::path base = path.parent_path();
  std::vector<DatasetRef> refs;
  for (const auto& block : parse_kv_blocks(content, path.string())) {
    DatasetRef ref;
    for (const auto& [key, value] : block) {
      if (key == "name") {
        ref.name = value;
      } else if (key == "language") {
        ref.language = value;
      } else if (key == "split") {
        ref.split = parse_split(value);
      } else if (key == "data") {
        ref.data = fs::path(value).is_absolute() ? fs::path(value) : base / value;
      } else if (key == "gold") {
        if (!value.empty()) {
          ref.gold = fs::path(value).is_absolute() ? fs::path(value) : base / value;
        }
      } else {
        fail(ErrorKind::Parse, path.string() + ": unknown manifest key '" + key + "'");
      }
    }
    if (ref.language.empty()) {
      fail(ErrorKind::Parse, path.string() + ": manifest block missing 'language'");
    }
    if (ref.data.empty()) {
      fail(ErrorKind::Parse, path.string() + ": manifest block missing 'data'");
    }
    if (ref.name.empty()) ref.name = ref.data.stem().string();
    refs.push_back(std::move(ref));
  }
  if (refs.empty()) fail(ErrorKind::Parse, path.string() + ": manifest lists no datasets");
  return refs;
}

void save_dataset_manifest(const std::vector<DatasetRef>& refs, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Parse, "cannot write: " + path.string());
  for (size_t i = 0; i < refs.size(); ++i) {
    if (i > 0) out << '\n';
    const auto& ref = refs[i];
    out << "name = " << ref.name << '\n';
    out << "language = " << ref.language << '\n';
    out << "split = " << to_string(ref.split) << '\n';
    out << "data = " << ref.data.string() << '\n';
    if (ref.gold) out << "gold = " << ref.gold->string() << '\n';
  }
}

}  // namespace vwsd
