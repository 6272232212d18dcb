#pragma once

#include <string>
#include <string_view>

#include "translod/void_meta.hpp"

namespace translod::publish {

inline constexpr std::string_view kSitemapNs =
    "http://www.sitemaps.org/schemas/sitemap/0.9";
inline constexpr std::string_view kSemanticSitemapNs =
    "http://sw.deri.org/2007/07/sitemapextension/scschema.xsd";

namespace detail {

inline std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

/// Semantic sitemap: one sc:dataset block advertising the dataset URI, the
/// SPARQL endpoint and the dump location.
inline std::string generate_sitemap(const DatasetMeta& meta) {
  validate_meta(meta);
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<urlset xmlns=\"";
  out += kSitemapNs;
  out += "\" xmlns:sc=\"";
  out += kSemanticSitemapNs;
  out += "\">\n";
  out += "  <sc:dataset>\n";
  out += "    <sc:datasetLabel>" + detail::xml_escape(meta.title) +
         "</sc:datasetLabel>\n";
  out += "    <sc:datasetURI>" + detail::xml_escape(meta.dataset_iri.value) +
         "</sc:datasetURI>\n";
  out += "    <sc:sparqlEndpointLocation>" +
         detail::xml_escape(resolve_path(meta.base, meta.sparql_endpoint_path).value) +
         "</sc:sparqlEndpointLocation>\n";
  out += "    <sc:dataDumpLocation>" +
         detail::xml_escape(resolve_path(meta.base, meta.dump_path).value) +
         "</sc:dataDumpLocation>\n";
  out += "  </sc:dataset>\n";
  out += "</urlset>\n";
  return out;
}

}  // namespace translod::publish
