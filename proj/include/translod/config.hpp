#pragma once

// Plain key = value configuration, one pair per line, '#' comments.

#include <map>
#include <string>
#include <string_view>

#include "translod/error.hpp"
#include "translod/text.hpp"

namespace translod {

using Config = std::map<std::string, std::string>;

inline Config parse_config(std::string_view input) {
  std::size_t bad = 0;
  if (!text::utf8_valid(input, &bad))
    throw Error("config: invalid UTF-8 at byte " + std::to_string(bad));
  Config out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= input.size()) {
    std::size_t end = input.find('\n', start);
    if (end == std::string_view::npos) end = input.size();
    ++line_no;
    std::string_view line = input.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    start = end == input.size() ? input.size() + 1 : end + 1;

    std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    std::string trimmed = text::trim(line);
    if (trimmed.empty()) continue;

    std::size_t eq = trimmed.find('=');
    if (eq == std::string::npos)
      throw SyntaxError(line_no, "expected key = value");
    std::string key = text::trim(trimmed.substr(0, eq));
    std::string value = text::trim(trimmed.substr(eq + 1));
    if (key.empty()) throw SyntaxError(line_no, "empty key");
    if (!out.emplace(key, value).second)
      throw SyntaxError(line_no, "duplicate key " + key);
  }
  return out;
}

inline const std::string& config_require(const Config& cfg,
                                         const std::string& key) {
  auto it = cfg.find(key);
  if (it == cfg.end()) throw Error("config: missing key " + key);
  return it->second;
}

inline std::string config_get(const Config& cfg, const std::string& key,
                              std::string fallback) {
  auto it = cfg.find(key);
  return it == cfg.end() ? std::move(fallback) : it->second;
}

}  // namespace translod
