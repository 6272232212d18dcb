#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "translod/error.hpp"
#include "translod/graph.hpp"
#include "translod/namespaces.hpp"

namespace translod::publish {

/// Identity card of the published dataset: everything VoID, the sitemap and
/// the Data Hub stub need to know about it.
struct DatasetMeta {
  Iri dataset_iri;
  std::string title;
  Iri base;
  std::string sparql_endpoint_path = "/sparql";
  std::string dump_path = "/dump.nt";
  std::vector<Iri> vocabularies;
  std::vector<Iri> example_resources;
};

inline void validate_meta(const DatasetMeta& meta) {
  if (!Iri::is_valid(meta.dataset_iri.value))
    throw Error("dataset meta: invalid dataset IRI <" + meta.dataset_iri.value + ">");
  if (!Iri::is_valid(meta.base.value) || meta.base.value.back() != '/')
    throw Error("dataset meta: base IRI must be absolute and end with '/'");
  for (const std::string* path : {&meta.sparql_endpoint_path, &meta.dump_path})
    if (path->empty() || path->front() != '/')
      throw Error("dataset meta: paths must begin with '/', got '" + *path + "'");
}

/// base ends with '/' and path starts with '/', so drop one of the two.
inline Iri resolve_path(const Iri& base, const std::string& path) {
  return Iri{base.value + path.substr(1)};
}

inline Graph generate_void(const Graph& g, const DatasetMeta& meta) {
  validate_meta(meta);
  auto void_iri = [](std::string_view local) {
    return Iri{std::string(ns::void_) + std::string(local)};
  };
  Graph out;
  Term dataset{meta.dataset_iri};
  out.insert(dataset, Term{rdf_type()}, Term{void_iri("Dataset")});
  out.insert(dataset, Term{Iri{std::string(ns::dcterms) + "title"}},
             Term{Literal::plain(meta.title)});
  out.insert(dataset, Term{void_iri("triples")},
             Term{Literal::typed(std::to_string(g.size()), xsd_type("integer"))});
  out.insert(dataset, Term{void_iri("sparqlEndpoint")},
             Term{resolve_path(meta.base, meta.sparql_endpoint_path)});
  out.insert(dataset, Term{void_iri("dataDump")},
             Term{resolve_path(meta.base, meta.dump_path)});
  for (const Iri& vocab : meta.vocabularies)
    out.insert(dataset, Term{void_iri("vocabulary")}, Term{vocab});
  for (const Iri& resource : meta.example_resources)
    out.insert(dataset, Term{void_iri("exampleResource")}, Term{resource});
  return out;
}

/// Stand-in for Data Hub registration: the package description that would be
/// uploaded, as a JSON document.
inline std::string datahub_stub(const DatasetMeta& meta) {
  validate_meta(meta);
  nlohmann::json resources = nlohmann::json::array();
  resources.push_back({{"format", "api/sparql"},
                       {"url", resolve_path(meta.base, meta.sparql_endpoint_path).value}});
  resources.push_back({{"format", "application/n-triples"},
                       {"url", resolve_path(meta.base, meta.dump_path).value}});
  nlohmann::json doc = {{"title", meta.title},
                        {"url", meta.dataset_iri.value},
                        {"resources", resources}};
  return doc.dump(2) + "\n";
}

}  // namespace translod::publish
