#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace vwsd {

// Two-column UTF-8 TSV cache (key, value) with write-through appends, used
// for generated definitions and translations. Values are normalized on
// write: tabs and newlines become spaces so the file stays line-oriented.
class TextCache {
 public:
  TextCache() = default;  // memory-only

  // Loads the file when it exists; otherwise the first put creates it.
  static TextCache open(const std::filesystem::path& path);

  std::optional<std::string> get(const std::string& key) const;

  // Appends and returns true unless the key is already cached.
  bool put(const std::string& key, const std::string& value);

  size_t size() const { return entries_.size(); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;  // empty for memory-only caches
  std::map<std::string, std::string> entries_;
};

}  // namespace vwsd
