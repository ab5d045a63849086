#include "vwsd/kvfile.hpp"

#include "vwsd/error.hpp"
#include "vwsd/util.hpp"

namespace vwsd {

namespace {

std::string strip_value(std::string_view raw) {
  std::string_view v = trim(raw);
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') {
    v = v.substr(1, v.size() - 2);
  }
  return std::string(v);
}

}  // namespace

std::vector<KvBlock> parse_kv_blocks(const std::string& content,
                                     const std::string& origin) {
  std::vector<KvBlock> blocks;
  KvBlock current;
  size_t line_no = 0;
  for (const auto& raw_line : split(content, '\n')) {
    ++line_no;
    std::string line{trim(raw_line)};
    if (line.empty()) {
      if (!current.empty()) blocks.push_back(std::move(current));
      current.clear();
      continue;
    }
    if (line[0] == '#') continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      fail(ErrorKind::Parse, origin + ":" + std::to_string(line_no) +
                                 ": expected 'key = value', got '" + line + "'");
    }
    std::string key{trim(std::string_view(line).substr(0, eq))};
    if (key.empty()) {
      fail(ErrorKind::Parse, origin + ":" + std::to_string(line_no) + ": empty key");
    }
    current.emplace_back(std::move(key), strip_value(std::string_view(line).substr(eq + 1)));
  }
  if (!current.empty()) blocks.push_back(std::move(current));
  return blocks;
}

KvBlock parse_kv_file(const std::string& content, const std::string& origin) {
  KvBlock merged;
  for (auto& block : parse_kv_blocks(content, origin)) {
    merged.insert(merged.end(), block.begin(), block.end());
  }
  return merged;
}

std::string kv_to_string(const KvBlock& block) {
  std::string out;
  for (const auto& [key, value] : block) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  }
  return out;
}

const std::string* kv_find(const KvBlock& block, const std::string& key) {
  for (const auto& [k, v] : block) {
    if (k == key) return &v;
  }
  return nullptr;
}

}  // namespace vwsd
