#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "translod/error.hpp"
#include "translod/graph.hpp"
#include "translod/namespaces.hpp"
#include "translod/negotiate.hpp"
#include "translod/ntriples.hpp"
#include "translod/sitemap.hpp"
#include "translod/sparql.hpp"
#include "translod/sparql_eval.hpp"
#include "translod/turtle.hpp"
#include "translod/void_meta.hpp"

namespace translod::publish {

struct ServerConfig {
  std::string host = "127.0.0.1";
  int port = 0;
  MediaType default_media_type = MediaType::Turtle;
  std::string resource_prefix = "/resource/";
};

inline void validate_server_config(const ServerConfig& config) {
  if (config.resource_prefix.empty() || config.resource_prefix.front() != '/' ||
      config.resource_prefix.back() != '/')
    throw Error("server config: resource prefix must start and end with '/'");
  if (config.port < 0 || config.port > 65535)
    throw Error("server config: port out of range");
}

struct HttpResponse {
  int status = 200;
  std::string content_type;
  std::string body;
};

namespace detail {

inline std::string html_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string term_display(const Term& t) {
  if (const Literal* lit = std::get_if<Literal>(&t)) {
    std::string out = lit->lexical;
    if (!lit->lang.empty()) out += " @" + lit->lang;
    if (lit->datatype) out += " (" + lit->datatype->value + ")";
    return out;
  }
  if (const Iri* iri = std::get_if<Iri>(&t)) return iri->value;
  return "_:" + std::get<BlankNode>(t).label;
}

}  // namespace detail

/// The frozen publication surface: resolves every route to an HttpResponse
/// without touching sockets, so tests can call it directly.
class Publisher {
 public:
  Publisher(Graph graph, DatasetMeta meta, ServerConfig config = {})
      : graph_(std::move(graph)),
        meta_(std::move(meta)),
        config_(std::move(config)) {
    validate_meta(meta_);
    validate_server_config(config_);
    dump_ = serialize_ntriples(graph_);
    void_turtle_ =
        serialize_turtle(generate_void(graph_, meta_), NamespaceMap::builtins());
    sitemap_ = generate_sitemap(meta_);
  }

  const Graph& graph() const { return graph_; }
  const DatasetMeta& meta() const { return meta_; }
  const ServerConfig& config() const { return config_; }

  HttpResponse resource(std::string_view path,
                        std::optional<std::string_view> accept) const {
    if (!path.starts_with(config_.resource_prefix))
      return {404, "text/plain", "not found\n"};
    std::string_view rest = path.substr(config_.resource_prefix.size());
    Iri iri{meta_.base.value + std::string(rest)};

    Graph description;
    for (const Triple& t : graph_.match(Term{iri}, std::nullopt, std::nullopt))
      description.insert(t);
    for (const Triple& t : graph_.match(std::nullopt, std::nullopt, Term{iri}))
      description.insert(t);
    if (description.size() == 0) return {404, "text/plain", "not found\n"};

    MediaType type;
    try {
      type = negotiate_content(accept, config_.default_media_type);
    } catch (const NotAcceptableError& e) {
      return {406, "text/plain", std::string(e.what()) + "\n"};
    }
    switch (type) {
      case MediaType::NTriples:
        return {200, "application/n-triples", serialize_ntriples(description)};
      case MediaType::Turtle:
        return {200, "text/turtle",
                serialize_turtle(description, NamespaceMap::builtins())};
      case MediaType::Html:
        return {200, "text/html", resource_html(iri, description)};
    }
    return {500, "text/plain", "unreachable\n"};
  }

  HttpResponse sparql(std::optional<std::string_view> query_text,
                      std::optional<std::string_view> accept) const {
    if (!query_text)
      return {400, "text/plain", "missing query parameter\n"};
    sparql::Query query;
    try {
      query = sparql::parse_query(*query_text);
    } catch (const Error& e) {
      return {400, "text/plain", std::string(e.what()) + "\n"};
    }
    if (query.is_select()) {
      std::vector<std::vector<Term>> rows = sparql::eval_select(graph_, query);
      return {200, "text/tab-separated-values",
              select_tsv(query.select().projection, rows)};
    }

    Graph constructed = sparql::eval_construct(graph_, query);
    MediaType rdf_default = config_.default_media_type == MediaType::NTriples
                                ? MediaType::NTriples
                                : MediaType::Turtle;
    MediaType type;
    try {
      type = negotiate_content(accept, rdf_default,
                               {MediaType::Turtle, MediaType::NTriples});
    } catch (const NotAcceptableError& e) {
      return {406, "text/plain", std::string(e.what()) + "\n"};
    }
    if (type == MediaType::NTriples)
      return {200, "application/n-triples", serialize_ntriples(constructed)};
    return {200, "text/turtle",
            serialize_turtle(constructed, NamespaceMap::builtins())};
  }

  HttpResponse void_document() const {
    return {200, "text/turtle", void_turtle_};
  }

  HttpResponse sitemap_document() const {
    return {200, "application/xml", sitemap_};
  }

  HttpResponse dump_document() const {
    return {200, "application/n-triples", dump_};
  }

  static std::string select_tsv(const std::vector<sparql::Variable>& projection,
                                const std::vector<std::vector<Term>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < projection.size(); ++i) {
      if (i > 0) out += '\t';
      out += projection[i].name;
    }
    out += '\n';
    for (const std::vector<Term>& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i > 0) out += '\t';
        out += to_ntriples(row[i]);
      }
      out += '\n';
    }
    return out;
  }

 private:
  std::string resource_html(const Iri& iri, const Graph& description) const {
    std::string out;
    out += "<!DOCTYPE html>\n<html>\n<head><meta charset=\"utf-8\"><title>";
    out += detail::html_escape(iri.value);
    out += "</title></head>\n<body>\n<h1>";
    out += detail::html_escape(iri.value);
    out += "</h1>\n<table border=\"1\">\n";
    out += "<tr><th>subject</th><th>predicate</th><th>value</th></tr>\n";
    for (const Triple& t : description.triples()) {
      out += "<tr><td>" + detail::html_escape(detail::term_display(t.subject)) +
             "</td><td>" +
             detail::html_escape(detail::term_display(t.predicate)) +
             "</td><td>" + detail::html_escape(detail::term_display(t.object)) +
             "</td></tr>\n";
    }
    out += "</table>\n</body>\n</html>\n";
    return out;
  }

  Graph graph_;
  DatasetMeta meta_;
  ServerConfig config_;
  std::string dump_;
  std::string void_turtle_;
  std::string sitemap_;
};

}  // namespace translod::publish
