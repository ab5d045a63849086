#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace vwsd {

struct SenseEntry {
  std::string sense_id;
  std::string lemma;
  std::string pos;
  std::string language;
  std::vector<std::string> glosses;  // ordered, nonempty
};

// Local sense inventory: JSON object mapping lemma -> list of sense entries.
// Lookup tries the exact lemma, then its ASCII-lowercased form.
class SenseInventory {
 public:
  static SenseInventory load(const std::filesystem::path& path);
  static SenseInventory from_json(const nlohmann::json& doc);

  void add(const std::string& lemma, std::vector<SenseEntry> entries);

  const std::vector<SenseEntry>* senses(const std::string& lemma) const;

  // One gloss per sense: the first gloss of each entry, in inventory sense
  // order. Unknown lemma yields an empty list; the caller decides fallback.
  std::vector<std::string> select_glosses(const std::string& lemma) const;

  size_t lemma_count() const { return entries_.size(); }

  nlohmann::json to_json() const;
  void save(const std::filesystem::path& path) const;

 private:
  std::map<std::string, std::vector<SenseEntry>> entries_;
};

}  // namespace vwsd
