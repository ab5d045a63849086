#include "vwsd/textcache.hpp"

#include <fstream>

#include "vwsd/error.hpp"
#include "vwsd/util.hpp"

namespace vwsd {

namespace fs = std::filesystem;

TextCache TextCache::open(const fs::path& path) {
  TextCache cache;
  cache.path_ = path;
  if (!fs::exists(path)) return cache;
  const std::string content = read_text_file(path.string());
  size_t line_no = 0;
  for (const auto& raw_line : split(content, '\n')) {
    ++line_no;
    std::string line = raw_line;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      fail(ErrorKind::Parse, path.string() + ":" + std::to_string(line_no) +
                                 ": expected two tab-separated columns");
    }
    std::string key = line.substr(0, tab);
    std::string value = line.substr(tab + 1);
    if (key.empty() || value.empty()) {
      fail(ErrorKind::Parse, path.string() + ":" + std::to_string(line_no) +
                                 ": empty key or value");
    }
    if (cache.entries_.contains(key)) {
      fail(ErrorKind::Integrity, path.string() + ":" + std::to_string(line_no) +
                                     ": duplicate cache key '" + key + "'");
    }
    cache.entries_.emplace(std::move(key), std::move(value));
  }
  return cache;
}

std::optional<std::string> TextCache::get(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

bool TextCache::put(const std::string& key, const std::string& value) {
  if (key.empty()) fail(ErrorKind::Validation, "cache key must be nonempty");
  if (value.empty()) fail(ErrorKind::Validation, "cache value must be nonempty");
  if (key.find('\t') != std::string::npos || key.find('\n') != std::string::npos) {
    fail(ErrorKind::Validation, "cache key must not contain tab or newline");
  }
  if (entries_.contains(key)) return false;
  std::string normalized = value;
  for (char& c : normalized) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  entries_.emplace(key, normalized);
  if (!path_.empty()) {
    if (path_.has_parent_path()) fs::create_directories(path_.parent_path());
    std::ofstream out(path_, std::ios::binary | std::ios::app);
    if (!out) fail(ErrorKind::Parse, "cannot append to cache: " + path_.string());
    out << key << '\t' << normalized << '\n';
  }
  return true;
}

}  // namespace vwsd
