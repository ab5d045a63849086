#include "vwsd/inventory.hpp"

#include <fstream>
#include <unordered_set>

#include "vwsd/error.hpp"
#include "vwsd/util.hpp"

namespace vwsd {

SenseInventory SenseInventory::load(const std::filesystem::path& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_text_file(path.string()));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, path.string() + ": invalid inventory JSON: " + e.what());
  }
  return from_json(doc);
}

SenseInventory SenseInventory::from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) fail(ErrorKind::Parse, "inventory root must be a JSON object");
  SenseInventory inventory;
  std::unordered_set<std::string> sense_ids;
  for (const auto& [lemma, senses] : doc.items()) {
    if (!senses.is_array()) {
      fail(ErrorKind::Parse, "inventory entry for '" + lemma + "' must be an array");
    }
    std::vector<SenseEntry> entries;
    for (const auto& sense : senses) {
      SenseEntry entry;
      entry.sense_id = sense.value("sense_id", "");
      entry.lemma = sense.value("lemma", lemma);
      entry.pos = sense.value("pos", "");
      entry.language = sense.value("language", "");
      if (!sense.contains("glosses") || !sense["glosses"].is_array()) {
        fail(ErrorKind::Parse, "sense '" + entry.sense_id + "' of '" + lemma +
                                   "' has no gloss list");
      }
      for (const auto& gloss : sense["glosses"]) {
        entry.glosses.push_back(gloss.get<std::string>());
      }
      if (entry.glosses.empty()) {
        fail(ErrorKind::Parse, "sense '" + entry.sense_id + "' of '" + lemma +
                                   "' has an empty gloss list");
      }
      if (entry.sense_id.empty()) {
        fail(ErrorKind::Parse, "sense of '" + lemma + "' is missing sense_id");
      }
      if (!sense_ids.insert(entry.sense_id).second) {
        fail(ErrorKind::Integrity, "duplicate sense_id '" + entry.sense_id + "'");
      }
      entries.push_back(std::move(entry));
    }
    inventory.add(lemma, std::move(entries));
  }
  return inventory;
}

void SenseInventory::add(const std::string& lemma, std::vector<SenseEntry> entries) {
  entries_[lemma] = std::move(entries);
}

const std::vector<SenseEntry>* SenseInventory::senses(const std::string& lemma) const {
  auto it = entries_.find(lemma);
  if (it == entries_.end()) it = entries_.find(ascii_lower(lemma));
  if (it == entries_.end()) return nullptr;
  return &it->second;
}

std::vector<std::string> SenseInventory::select_glosses(const std::string& lemma) const {
  std::vector<std::string> glosses;
  const auto* sense_list = senses(lemma);
  if (!sense_list) return glosses;
  glosses.reserve(sense_list->size());
  for (const auto& sense : *sense_list) {
    glosses.push_back(sense.glosses.front());
  }
  return glosses;
}

nlohmann::json SenseInventory::to_json() const {
  nlohmann::json doc = nlohmann::json::object();
  for (const auto& [lemma, senses] : entries_) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& sense : senses) {
      list.push_back({{"sense_id", sense.sense_id},
                      {"lemma", sense.lemma},
                      {"pos", sense.pos},
                      {"language", sense.language},
                      {"glosses", sense.glosses}});
    }
    doc[lemma] = std::move(list);
  }
  return doc;
}

void SenseInventory::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Parse, "cannot write: " + path.string());
  out << to_json().dump(2) << '\n';
}

}  // namespace vwsd
