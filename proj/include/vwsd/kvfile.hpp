#pragma once

#include <string>
#include <utility>
#include <vector>

namespace vwsd {

// Minimal "key = value" text format used by config, manifest, and run
// metadata files. '#' starts a comment line; blank lines separate blocks.
// Values keep interior whitespace; surrounding whitespace and optional
// double quotes are stripped.
using KvBlock = std::vector<std::pair<std::string, std::string>>;

std::vector<KvBlock> parse_kv_blocks(const std::string& content,
                                     const std::string& origin);

// Single-block convenience; blank lines are ignored instead of splitting.
KvBlock parse_kv_file(const std::string& content, const std::string& origin);

std::string kv_to_string(const KvBlock& block);

const std::string* kv_find(const KvBlock& block, const std::string& key);

}  // namespace vwsd
