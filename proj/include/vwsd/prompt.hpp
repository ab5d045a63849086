#pragma once

#include <map>
#include <string>
#include <vector>

namespace vwsd {

inline constexpr const char* kDefinePromptHeader = "For each line, define the phrase:";

// Header line followed by the contexts, one per line, in order. Contexts
// must be nonempty and newline-free.
std::string build_prompt(const std::vector<std::string>& contexts);

// Matches each response line against the requested contexts: the line is
// split at the first ": " whose prefix equals a context (ASCII
// case-insensitive). Unmatched lines are dropped; unmatched contexts are
// simply absent from the result. A response matching nothing at all is a
// parse error carrying the raw text.
std::map<std::string, std::string> parse_definitions(
    const std::string& response, const std::vector<std::string>& contexts);

}  // namespace vwsd
