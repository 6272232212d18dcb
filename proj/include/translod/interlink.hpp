#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "translod/config.hpp"
#include "translod/error.hpp"
#include "translod/graph.hpp"
#include "translod/namespaces.hpp"
#include "translod/text.hpp"

namespace translod::interlink {

enum class PlaceKind { City, Department, Region };

inline PlaceKind parse_place_kind(std::string_view s) {
  if (s == "city") return PlaceKind::City;
  if (s == "department") return PlaceKind::Department;
  if (s == "region") return PlaceKind::Region;
  throw Error("unknown place kind: '" + std::string(s) +
              "' (want city, department or region)");
}

struct GazetteerEntry {
  Iri iri;
  std::string name;
  PlaceKind kind = PlaceKind::City;
  std::optional<double> latitude;
  std::optional<double> longitude;
  std::optional<std::string> insee_code;
};

struct Gazetteer {
  std::vector<GazetteerEntry> entries;
};

struct LinkSpec {
  Iri source_class;
  Iri source_label_property;
  std::optional<std::pair<Iri, Iri>> source_geo_properties;  // lat, lon
  PlaceKind target_kind = PlaceKind::City;
  double name_threshold = 1.0;
  std::optional<double> geo_threshold_km;
  Iri link_predicate{std::string(ns::owl) + "sameAs"};
};

struct Link {
  Iri source;
  Iri target;
  double score = 0.0;
  Iri predicate;
};

struct LinkResult {
  Graph graph;                     // one (source, predicate, target) per link
  std::vector<Link> links;         // sorted by (source, target)
  std::size_t skipped_subjects = 0;  // typed subjects with no usable label
};

/// Matching key for toponyms: lowercase, accents folded, hyphens and
/// apostrophes opened to spaces, whitespace runs collapsed.
inline std::string normalize_label(std::string_view s) {
  std::string folded;
  for (char32_t cp : text::utf8_decode(s)) {
    if (cp == U'-' || cp == U'\'' || cp == U'’') {
      folded += ' ';
      continue;
    }
    if (const char* rep = text::accent_to_ascii(cp)) {
      folded += rep;
    } else {
      text::utf8_encode(cp, folded);
    }
  }
  std::string out;
  bool pending_space = false;
  for (char c : folded) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out += ' ';
      pending_space = false;
    }
    out += c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c;
  }
  return out;
}

/// 1 - editDistance / max(length), counted in code points; 1 when both empty.
inline double levenshtein_similarity(std::string_view a, std::string_view b) {
  std::vector<char32_t> ca = text::utf8_decode(a);
  std::vector<char32_t> cb = text::utf8_decode(b);
  if (ca.empty() && cb.empty()) return 1.0;
  std::vector<std::size_t> prev(cb.size() + 1), cur(cb.size() + 1);
  for (std::size_t j = 0; j <= cb.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= ca.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= cb.size(); ++j) {
      std::size_t sub = prev[j - 1] + (ca[i - 1] == cb[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  double d = static_cast<double>(prev[cb.size()]);
  return 1.0 - d / static_cast<double>(std::max(ca.size(), cb.size()));
}

/// Great-circle distance on a sphere of radius 6371.0 km.
inline double haversine_km(double lat1, double lon1, double lat2, double lon2) {
  constexpr double kEarthRadiusKm = 6371.0;
  constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
  double phi1 = lat1 * kDegToRad;
  double phi2 = lat2 * kDegToRad;
  double dphi = (lat2 - lat1) * kDegToRad;
  double dlambda = (lon2 - lon1) * kDegToRad;
  double s1 = std::sin(dphi / 2.0);
  double s2 = std::sin(dlambda / 2.0);
  double a = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(a)));
}

namespace detail {

inline std::optional<double> parse_decimal_cell(const std::string& cell,
                                                std::size_t line_no,
                                                const char* what, double lo,
                                                double hi) {
  if (cell.empty()) return std::nullopt;
  char* end = nullptr;
  double v = std::strtod(cell.c_str(), &end);
  if (end != cell.c_str() + cell.size())
    throw SyntaxError(line_no, std::string(what) + " is not a number: '" + cell + "'");
  if (v < lo || v > hi)
    throw SyntaxError(line_no, std::string(what) + " out of range: " + cell);
  return v;
}

}  // namespace detail

/// Reads the semicolon-separated gazetteer. The header line is mandatory
/// and fixed; IRIs must be unique; coordinates come in lat/lon pairs.
inline Gazetteer parse_gazetteer(std::string_view input) {
  std::size_t bad = 0;
  if (!text::utf8_valid(input, &bad))
    throw Error("gazetteer: invalid UTF-8 at byte " + std::to_string(bad));

  constexpr std::string_view kHeader = "iri;name;kind;lat;lon;insee_code";
  Gazetteer gaz;
  std::set<std::string> seen;
  bool saw_header = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= input.size()) {
    std::size_t end = input.find('\n', start);
    if (end == std::string_view::npos) end = input.size();
    ++line_no;
    std::string_view line = input.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    start = end == input.size() ? input.size() + 1 : end + 1;
    if (text::trim(line).empty() || line.starts_with('#')) continue;

    if (!saw_header) {
      if (text::trim(line) != kHeader)
        throw SyntaxError(line_no, "expected header '" + std::string(kHeader) + "'");
      saw_header = true;
      continue;
    }

    std::vector<std::string> cells = text::split(line, ';');
    if (cells.size() != 6)
      throw SyntaxError(line_no,
                        "expected 6 fields, got " + std::to_string(cells.size()));
    GazetteerEntry e;
    std::string iri = text::trim(cells[0]);
    if (!Iri::is_valid(iri)) throw SyntaxError(line_no, "invalid IRI: " + iri);
    if (!seen.insert(iri).second)
      throw SyntaxError(line_no, "duplicate IRI: " + iri);
    e.iri = Iri{iri};
    e.name = text::trim(cells[1]);
    if (e.name.empty()) throw SyntaxError(line_no, "empty name");
    try {
      e.kind = parse_place_kind(text::trim(cells[2]));
    } catch (const Error& err) {
      throw SyntaxError(line_no, err.what());
    }
    e.latitude = detail::parse_decimal_cell(text::trim(cells[3]), line_no,
                                            "lat", -90.0, 90.0);
    e.longitude = detail::parse_decimal_cell(text::trim(cells[4]), line_no,
                                             "lon", -180.0, 180.0);
    if (e.latitude.has_value() != e.longitude.has_value())
      throw SyntaxError(line_no, "lat and lon must be given together");
    std::string insee = text::trim(cells[5]);
    if (!insee.empty()) e.insee_code = insee;
    gaz.entries.push_back(std::move(e));
  }
  if (!saw_header) throw SyntaxError(1, "missing header line");
  return gaz;
}

namespace detail {

// A value is an IRI when wrapped in angle brackets or written with "://";
// every other colon form is a qname, so a typoed prefix fails instead of
// passing as an opaque IRI scheme.
inline Iri spec_iri(const Config& cfg, const std::string& key) {
  const std::string& value = config_require(cfg, key);
  if (value.size() >= 2 && value.front() == '<' && value.back() == '>') {
    std::string iri = value.substr(1, value.size() - 2);
    if (!Iri::is_valid(iri)) throw Error(key + ": invalid IRI " + value);
    return Iri{iri};
  }
  if (value.find("://") != std::string::npos) {
    if (!Iri::is_valid(value)) throw Error(key + ": invalid IRI " + value);
    return Iri{value};
  }
  return expand_qname(value, NamespaceMap::builtins());
}

inline double spec_number(const std::string& key, const std::string& value,
                          double lo, double hi) {
  char* end = nullptr;
  double v = std::strtod(value.c_str(), &end);
  if (value.empty() || end != value.c_str() + value.size())
    throw Error(key + ": not a number: '" + value + "'");
  if (v < lo || v > hi)
    throw RangeError(key + " must be in [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "], got " + value);
  return v;
}

}  // namespace detail

/// LinkSpec from key = value text; keys are named after the fields.
/// source_geo_properties holds the lat and lon property IRIs, space-separated.
inline LinkSpec parse_link_spec(std::string_view input) {
  Config cfg = parse_config(input);
  LinkSpec spec;
  spec.source_class = detail::spec_iri(cfg, "source_class");
  spec.source_label_property = detail::spec_iri(cfg, "source_label_property");
  spec.target_kind = parse_place_kind(config_require(cfg, "target_kind"));
  spec.name_threshold = detail::spec_number(
      "name_threshold", config_require(cfg, "name_threshold"), 0.0, 1.0);

  if (auto it = cfg.find("geo_threshold_km"); it != cfg.end())
    spec.geo_threshold_km = detail::spec_number(
        "geo_threshold_km", it->second, 0.0, 40075.0);
  if (auto it = cfg.find("source_geo_properties"); it != cfg.end()) {
    std::vector<std::string> parts;
    for (const std::string& p : text::split(it->second, ' '))
      if (!text::trim(p).empty()) parts.push_back(text::trim(p));
    if (parts.size() != 2)
      throw Error("source_geo_properties: want two IRIs (lat lon), got " +
                  std::to_string(parts.size()));
    Config sub{{"lat", parts[0]}, {"lon", parts[1]}};
    spec.source_geo_properties = {detail::spec_iri(sub, "lat"),
                                  detail::spec_iri(sub, "lon")};
  }
  if (auto it = cfg.find("link_predicate"); it != cfg.end()) {
    Config sub{{"link_predicate", it->second}};
    spec.link_predicate = detail::spec_iri(sub, "link_predicate");
  }

  static const std::set<std::string> known = {
      "source_class",   "source_label_property", "source_geo_properties",
      "target_kind",    "name_threshold",        "geo_threshold_km",
      "link_predicate"};
  for (const auto& [key, value] : cfg)
    if (!known.contains(key)) throw Error("link spec: unknown key " + key);
  return spec;
}

namespace detail {

inline std::optional<double> subject_coord(const Graph& g, const Term& subject,
                                           const Iri& property) {
  for (const Triple& t : g.match(subject, Term{property}, std::nullopt)) {
    const Literal* lit = std::get_if<Literal>(&t.object);
    if (!lit) continue;
    char* end = nullptr;
    double v = std::strtod(lit->lexical.c_str(), &end);
    if (!lit->lexical.empty() && end == lit->lexical.c_str() + lit->lexical.size())
      return v;
  }
  return std::nullopt;
}

}  // namespace detail

/// All-pairs comparison of typed, labelled subjects against the gazetteer
/// entries of the target kind. A (source, target) pair keeps its best score.
inline LinkResult discover_links(const Graph& source, const Gazetteer& gaz,
                                 const LinkSpec& spec) {
  LinkResult result;

  std::vector<const GazetteerEntry*> candidates;
  std::vector<std::string> candidate_names;
  for (const GazetteerEntry& e : gaz.entries) {
    if (e.kind != spec.target_kind) continue;
    candidates.push_back(&e);
    candidate_names.push_back(normalize_label(e.name));
  }

  std::map<std::pair<Iri, Iri>, double> best;
  for (const Triple& typed :
       source.match(std::nullopt, Term{rdf_type()}, Term{spec.source_class})) {
    const Iri* subject = std::get_if<Iri>(&typed.subject);
    std::vector<std::string> labels;
    if (subject) {
      for (const Triple& t : source.match(typed.subject,
                                          Term{spec.source_label_property},
                                          std::nullopt))
        if (const Literal* lit = std::get_if<Literal>(&t.object))
          labels.push_back(normalize_label(lit->lexical));
    }
    if (!subject || labels.empty()) {
      ++result.skipped_subjects;
      continue;
    }

    std::optional<double> lat, lon;
    if (spec.source_geo_properties) {
      lat = detail::subject_coord(source, typed.subject,
                                  spec.source_geo_properties->first);
      lon = detail::subject_coord(source, typed.subject,
                                  spec.source_geo_properties->second);
    }

    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const GazetteerEntry& entry = *candidates[i];
      double score = 0.0;
      for (const std::string& label : labels)
        score = std::max(score,
                         levenshtein_similarity(label, candidate_names[i]));
      if (score < spec.name_threshold) continue;
      if (spec.geo_threshold_km && lat && lon && entry.latitude &&
          entry.longitude) {
        double km = haversine_km(*lat, *lon, *entry.latitude, *entry.longitude);
        if (km > *spec.geo_threshold_km) continue;
      }
      auto key = std::make_pair(*subject, entry.iri);
      auto [it, inserted] = best.emplace(key, score);
      if (!inserted) it->second = std::max(it->second, score);
    }
  }

  for (const auto& [pair, score] : best) {
    result.links.push_back(Link{pair.first, pair.second, score,
                                spec.link_predicate});
    result.graph.insert(pair.first, spec.link_predicate, Term{pair.second});
  }
  return result;
}

}  // namespace translod::interlink
