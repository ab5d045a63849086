#include "vwsd/seg.hpp"

#include <charconv>

#include "vwsd/error.hpp"
#include "vwsd/util.hpp"

namespace vwsd {

MaskTable load_mask_values(const std::filesystem::path& path) {
  const std::string content = read_text_file(path.string());
  MaskTable table;
  size_t line_no = 0;
  for (const auto& raw_line : split(content, '\n')) {
    ++line_no;
    std::string line = raw_line;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> fields = split(line, '\t');
    if (fields.size() != 3) {
      fail(ErrorKind::Parse, path.string() + ":" + std::to_string(line_no) +
                                 ": expected 3 tab-separated fields");
    }
    size_t index = 0;
    const auto [ptr, ec] =
        std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), index);
    if (ec != std::errc{} || ptr != fields[0].data() + fields[0].size()) {
      fail(ErrorKind::Parse, path.string() + ":" + std::to_string(line_no) +
                                 ": bad instance index '" + fields[0] + "'");
    }
    double value = 0.0;
    try {
      size_t used = 0;
      value = std::stod(fields[2], &used);
      if (used != fields[2].size()) throw std::invalid_argument(fields[2]);
    } catch (const std::exception&) {
      fail(ErrorKind::Parse, path.string() + ":" + std::to_string(line_no) +
                                 ": bad mask value '" + fields[2] + "'");
    }
    const auto key = std::make_pair(index, fields[1]);
    if (table.contains(key)) {
      fail(ErrorKind::Integrity, path.string() + ":" + std::to_string(line_no) +
                                     ": duplicate mask entry for instance " +
                                     fields[0] + ", candidate '" + fields[1] + "'");
    }
    table.emplace(key, value);
  }
  if (table.empty()) fail(ErrorKind::Parse, path.string() + ": empty mask file");
  return table;
}

Prediction seg_select(size_t instance_index, const Instance& instance,
                      const std::map<std::string, double>& mask_values) {
  std::vector<double> totals;
  totals.reserve(instance.candidates.size());
  for (const auto& candidate : instance.candidates) {
    const auto it = mask_values.find(candidate);
    if (it == mask_values.end()) {
      fail(ErrorKind::Integrity, "no mask value for candidate '" + candidate +
                                     "' of instance " + std::to_string(instance_index));
    }
    if (!(it->second >= 0.0 && it->second <= 1.0)) {
      fail(ErrorKind::Validation, "mask value " + format_double(it->second) +
                                      " for candidate '" + candidate +
                                      "' outside [0, 1]");
    }
    totals.push_back(it->second);
  }
  return make_prediction(instance_index, instance, totals);
}

Prediction seg_select_from_table(size_t instance_index, const Instance& instance,
                                 const MaskTable& table) {
  std::map<std::string, double> values;
  for (const auto& candidate : instance.candidates) {
    const auto it = table.find(std::make_pair(instance_index, candidate));
    if (it != table.end()) values.emplace(candidate, it->second);
  }
  return seg_select(instance_index, instance, values);
}

}  // namespace vwsd
