#include "vwsd/prompt.hpp"

#include "vwsd/error.hpp"
#include "vwsd/util.hpp"

namespace vwsd {

std::string build_prompt(const std::vector<std::string>& contexts) {
  if (contexts.empty()) {
    fail(ErrorKind::Validation, "build_prompt requires at least one context");
  }
  for (const auto& context : contexts) {
    if (context.empty()) fail(ErrorKind::Validation, "empty context in prompt");
    if (context.find('\n') != std::string::npos) {
      fail(ErrorKind::Validation, "context contains a newline: '" + context + "'");
    }
  }
  std::string prompt = kDefinePromptHeader;
  for (const auto& context : contexts) {
    prompt += '\n';
    prompt += context;
  }
  return prompt;
}

std::map<std::string, std::string> parse_definitions(
    const std::string& response, const std::vector<std::string>& contexts) {
  if (response.empty()) fail(ErrorKind::Validation, "empty generation response");

  std::map<std::string, std::string> definitions;
  for (const auto& raw_line : split(response, '\n')) {
    std::string line = raw_line;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const std::string lowered = ascii_lower(line);
    size_t pos = lowered.find(": ");
    while (pos != std::string::npos) {
      const std::string_view prefix = std::string_view(lowered).substr(0, pos);
      for (const auto& context : contexts) {
        if (ascii_lower(context) == prefix) {
          const std::string definition = line.substr(pos + 2);
          if (!definition.empty() && !definitions.contains(context)) {
            definitions.emplace(context, definition);
          }
          pos = std::string::npos;
          break;
        }
      }
      if (pos == std::string::npos) break;
      pos = lowered.find(": ", pos + 1);
    }
  }
  if (definitions.empty()) {
    fail(ErrorKind::Parse, "no context matched any response line; raw response: " + response);
  }
  return definitions;
}

}  // namespace vwsd
