#pragma once

#include <array>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "translod/error.hpp"
#include "translod/text.hpp"

namespace translod::publish {

enum class MediaType { Html, Turtle, NTriples };

inline std::string_view media_type_name(MediaType t) {
  switch (t) {
    case MediaType::Html: return "text/html";
    case MediaType::Turtle: return "text/turtle";
    case MediaType::NTriples: return "application/n-triples";
  }
  return "text/turtle";
}

inline std::optional<MediaType> media_type_from_name(std::string_view name) {
  if (name == "text/html") return MediaType::Html;
  if (name == "text/turtle") return MediaType::Turtle;
  if (name == "application/n-triples") return MediaType::NTriples;
  return std::nullopt;
}

namespace detail {

struct MediaRange {
  std::string type;  // lowercased "type/subtype", "type/*" or "*/*"
  double q = 1.0;
};

inline std::vector<MediaRange> parse_accept(std::string_view header) {
  std::vector<MediaRange> ranges;
  for (const std::string& part : text::split(header, ',')) {
    std::vector<std::string> params = text::split(part, ';');
    if (params.empty()) continue;
    MediaRange range;
    range.type = text::to_lower_ascii(text::trim(params[0]));
    if (range.type.empty()) continue;
    for (std::size_t i = 1; i < params.size(); ++i) {
      std::string param = std::string(text::trim(params[i]));
      if (!param.starts_with("q=")) continue;
      std::string value = param.substr(2);
      char* end = nullptr;
      double q = std::strtod(value.c_str(), &end);
      if (!value.empty() && end == value.c_str() + value.size() && q >= 0.0 &&
          q <= 1.0)
        range.q = q;
    }
    ranges.push_back(std::move(range));
  }
  return ranges;
}

inline bool range_matches(const MediaRange& range, std::string_view type_name,
                          MediaType type, MediaType fallback) {
  if (range.type == type_name) return true;
  // The full wildcard stands for "whatever the server prefers".
  if (range.type == "*/*") return type == fallback;
  std::size_t slash = range.type.find('/');
  if (slash == std::string::npos || range.type.substr(slash + 1) != "*")
    return false;
  return type_name.substr(0, type_name.find('/')) ==
         range.type.substr(0, slash);
}

}  // namespace detail

/// Picks among the supported types by q-value; equal q falls back to the
/// order html, turtle, n-triples. Absent or wildcard-only headers yield the
/// fallback; nothing acceptable raises NotAcceptableError.
inline MediaType negotiate_content(std::optional<std::string_view> accept,
                                   MediaType fallback,
                                   const std::vector<MediaType>& supported = {
                                       MediaType::Html, MediaType::Turtle,
                                       MediaType::NTriples}) {
  if (!accept || text::trim(*accept).empty()) return fallback;
  std::vector<detail::MediaRange> ranges = detail::parse_accept(*accept);
  if (ranges.empty()) return fallback;

  MediaType best = fallback;
  double best_q = -1.0;
  for (MediaType type : supported) {
    std::string_view name = media_type_name(type);
    double q = -1.0;
    for (const detail::MediaRange& range : ranges)
      if (detail::range_matches(range, name, type, fallback))
        q = std::max(q, range.q);
    if (q > best_q) {
      best = type;
      best_q = q;
    }
  }
  if (best_q <= 0.0)
    throw NotAcceptableError("no acceptable media type in '" +
                             std::string(*accept) + "'");
  return best;
}

}  // namespace translod::publish
