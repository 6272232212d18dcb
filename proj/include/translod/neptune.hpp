#pragma once

#include <charconv>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "translod/error.hpp"
#include "translod/graph.hpp"
#include "translod/namespaces.hpp"
#include "translod/text.hpp"

namespace translod::neptune {

/// A coordinate keeps the exact source text: the exports carry 16-digit
/// decimals that must survive to the serialized literal byte-identically.
struct Decimal {
  std::string lexical;
  double value = 0.0;
};

struct StopPoint {
  std::string object_id;
  std::optional<long long> object_version;
  std::optional<std::string> creation_time;
  Decimal longitude;
  Decimal latitude;
  std::optional<std::string> long_lat_type;
  std::optional<std::string> name;
};

/// Any line child the converter has no dedicated type for. Tag and scalar
/// children map onto the namespace generically.
struct GenericElement {
  std::string tag;
  std::vector<std::pair<std::string, std::string>> scalar_children;
  std::optional<std::string> object_id;
};

struct LineDescription {
  std::vector<StopPoint> stop_points;
  std::vector<GenericElement> other_elements;
};

struct NeptuneDocument {
  std::vector<LineDescription> line_descriptions;
  std::string source_file;
};

namespace detail {

inline bool decimal_lexical(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  std::size_t digits = 0, dots = 0;
  for (; i < s.size(); ++i) {
    if (s[i] >= '0' && s[i] <= '9') ++digits;
    else if (s[i] == '.') ++dots;
    else return false;
  }
  return digits > 0 && dots <= 1;
}

inline Decimal parse_coordinate(const std::string& element, const char* field,
                                const std::string& lexical, double lo, double hi) {
  if (lexical.empty()) throw MissingFieldError(element, field);
  if (!decimal_lexical(lexical))
    throw RangeError(element + ": " + field + " is not a decimal: '" + lexical + "'");
  double v = std::strtod(lexical.c_str(), nullptr);
  if (v < lo || v > hi)
    throw RangeError(element + ": " + field + " " + lexical + " outside [" +
                     std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return Decimal{lexical, v};
}

using Ptree = boost::property_tree::ptree;

inline std::optional<std::string> child_text(const Ptree& node, const char* name) {
  auto it = node.find(name);
  if (it == node.not_found()) return std::nullopt;
  return it->second.get_value<std::string>();
}

inline StopPoint parse_stop_point(const Ptree& node) {
  StopPoint sp;
  auto id = child_text(node, "objectId");
  if (!id || id->empty()) throw MissingFieldError("StopPoint", "objectId");
  sp.object_id = *id;

  if (auto v = child_text(node, "objectVersion")) {
    long long version = 0;
    auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), version);
    if (ec != std::errc{} || ptr != v->data() + v->size() || version < 0)
      throw RangeError("StopPoint: objectVersion must be a non-negative integer, got '" +
                       *v + "'");
    sp.object_version = version;
  }
  sp.creation_time = child_text(node, "creationTime");

  auto lon = child_text(node, "longitude");
  if (!lon) throw MissingFieldError("StopPoint", "longitude");
  sp.longitude = parse_coordinate("StopPoint", "longitude", *lon, -180.0, 180.0);
  auto lat = child_text(node, "latitude");
  if (!lat) throw MissingFieldError("StopPoint", "latitude");
  sp.latitude = parse_coordinate("StopPoint", "latitude", *lat, -90.0, 90.0);

  sp.long_lat_type = child_text(node, "longLatType");
  sp.name = child_text(node, "name");
  return sp;
}

inline bool structural_name(const std::string& name) {
  return name == "<xmlattr>" || name == "<xmlcomment>" || name == "<xmltext>";
}

inline GenericElement parse_generic(const std::string& tag, const Ptree& node) {
  GenericElement e;
  e.tag = tag;
  for (const auto& [name, child] : node) {
    if (structural_name(name)) continue;
    if (!child.empty()) continue;  // only scalar children carry over
    std::string value = child.get_value<std::string>();
    if (name == "objectId") {
      e.object_id = value;
    } else if (!value.empty()) {
      e.scalar_children.emplace_back(name, value);
    }
  }
  return e;
}

inline LineDescription parse_line(const Ptree& node) {
  LineDescription line;
  for (const auto& [name, child] : node) {
    if (structural_name(name)) continue;
    if (name == "StopPoint") {
      line.stop_points.push_back(parse_stop_point(child));
    } else {
      line.other_elements.push_back(parse_generic(name, child));
    }
  }
  return line;
}

}  // namespace detail

inline NeptuneDocument parse_neptune_xml(std::string_view xml,
                                         std::string source_file = "") {
  std::size_t bad = 0;
  if (!text::utf8_valid(xml, &bad)) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < bad && i < xml.size(); ++i)
      if (xml[i] == '\n') ++line;
    throw XmlSyntaxError(line, "invalid UTF-8");
  }

  namespace px = boost::property_tree::xml_parser;
  detail::Ptree root;
  try {
    std::istringstream in{std::string(xml)};
    boost::property_tree::read_xml(in, root,
                                   px::trim_whitespace | px::no_comments);
  } catch (const boost::property_tree::xml_parser_error& e) {
    throw XmlSyntaxError(e.line(), e.message());
  }

  const detail::Ptree* network = nullptr;
  for (const auto& [name, child] : root) {
    if (detail::structural_name(name)) continue;
    if (name != "ChouettePTNetwork" || network)
      throw XmlSyntaxError(1, "expected a single ChouettePTNetwork root, got <" +
                                  name + ">");
    network = &child;
  }
  if (!network) throw XmlSyntaxError(1, "expected a ChouettePTNetwork root");

  NeptuneDocument doc;
  doc.source_file = std::move(source_file);
  for (const auto& [name, child] : *network) {
    if (name == "ChouetteLineDescription")
      doc.line_descriptions.push_back(detail::parse_line(child));
  }
  return doc;
}

/// base + "neptune/" + object id with ':' flattened to '/'.
inline Iri mint_iri_from_objectid(std::string_view object_id, const Iri& base) {
  std::string path(object_id);
  for (char& c : path)
    if (c == ':') c = '/';
  return Iri{base.value + "neptune/" + path};
}

inline Graph neptune_to_rdf(const NeptuneDocument& doc, const Iri& base) {
  Graph g;
  auto prop = [](std::string_view local) {
    return Iri{std::string(ns::neptune) + std::string(local)};
  };
  for (const LineDescription& line : doc.line_descriptions) {
    for (const StopPoint& sp : line.stop_points) {
      Iri subj = mint_iri_from_objectid(sp.object_id, base);
      g.insert(subj, rdf_type(), Term{prop("StopPoint")});
      if (sp.object_version)
        g.insert(subj, prop("objectVersion"),
                 Literal::typed(std::to_string(*sp.object_version),
                                xsd_type("integer")));
      if (sp.creation_time)
        g.insert(subj, prop("creationTime"),
                 Literal::typed(*sp.creation_time, xsd_type("dateTime")));
      g.insert(subj, prop("longitude"),
               Literal::typed(sp.longitude.lexical, xsd_type("decimal")));
      g.insert(subj, prop("latitude"),
               Literal::typed(sp.latitude.lexical, xsd_type("decimal")));
      if (sp.long_lat_type)
        g.insert(subj, prop("longLatType"), Literal::plain(*sp.long_lat_type));
      if (sp.name) g.insert(subj, prop("name"), Literal::plain(*sp.name));
    }
    for (const GenericElement& e : line.other_elements) {
      if (!e.object_id || e.object_id->empty()) continue;
      Iri subj = mint_iri_from_objectid(*e.object_id, base);
      g.insert(subj, rdf_type(), Term{prop(e.tag)});
      for (const auto& [name, value] : e.scalar_children)
        g.insert(subj, prop(name), Literal::plain(value));
    }
  }
  return g;
}

}  // namespace translod::neptune
