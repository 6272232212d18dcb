#pragma once

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "translod/config.hpp"
#include "translod/error.hpp"
#include "translod/http_server.hpp"
#include "translod/interlink.hpp"
#include "translod/io.hpp"
#include "translod/neptune.hpp"
#include "translod/ntriples.hpp"
#include "translod/passim.hpp"
#include "translod/server.hpp"
#include "translod/sitemap.hpp"
#include "translod/sparql.hpp"
#include "translod/sparql_eval.hpp"
#include "translod/transform.hpp"
#include "translod/turtle.hpp"
#include "translod/void_meta.hpp"

namespace translod::cli {

namespace detail {

inline void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  write_file(path, content);
}

inline Iri parse_base(const std::string& value) {
  if (!Iri::is_valid(value) || value.back() != '/')
    throw Error("base IRI must be absolute and end with '/', got '" + value +
                "'");
  return Iri{value};
}

inline std::vector<Iri> iri_list(const std::string& value) {
  std::vector<Iri> out;
  for (const std::string& part : text::split(value, ' ')) {
    std::string iri = std::string(text::trim(part));
    if (iri.empty()) continue;
    if (!Iri::is_valid(iri)) throw Error("invalid IRI in list: " + iri);
    out.push_back(Iri{iri});
  }
  return out;
}

inline publish::DatasetMeta meta_from_config(const Config& cfg) {
  publish::DatasetMeta meta;
  meta.dataset_iri = Iri{config_require(cfg, "dataset_iri")};
  meta.title = config_require(cfg, "title");
  meta.base = parse_base(config_require(cfg, "base"));
  meta.sparql_endpoint_path =
      config_get(cfg, "sparql_endpoint_path", meta.sparql_endpoint_path);
  meta.dump_path = config_get(cfg, "dump_path", meta.dump_path);
  meta.vocabularies = iri_list(config_get(cfg, "vocabularies", ""));
  meta.example_resources = iri_list(config_get(cfg, "example_resources", ""));
  publish::validate_meta(meta);
  return meta;
}

inline publish::ServerConfig server_config_from(const Config& cfg,
                                                const std::string& host_flag,
                                                int port_flag) {
  publish::ServerConfig config;
  config.host = config_get(cfg, "host", config.host);
  std::string port_text = config_get(cfg, "port", "");
  if (!port_text.empty())
    config.port = static_cast<int>(
        interlink::detail::spec_number("port", port_text, 0, 65535));
  std::string media = config_get(cfg, "default_media_type", "");
  if (!media.empty()) {
    auto parsed = publish::media_type_from_name(media);
    if (!parsed) throw Error("unsupported default_media_type: " + media);
    config.default_media_type = *parsed;
  }
  config.resource_prefix =
      config_get(cfg, "resource_prefix", config.resource_prefix);
  if (!host_flag.empty()) config.host = host_flag;
  if (port_flag >= 0) config.port = port_flag;
  publish::validate_server_config(config);
  return config;
}

inline void report_row_errors(const std::string& file,
                              const std::vector<passim::RowError>& errors) {
  for (const passim::RowError& e : errors)
    std::cerr << "translod: " << file << ": line " << e.line << ": "
              << e.reason << " (row skipped)\n";
}

}  // namespace detail

/// Entry point behind main(): wires the subcommands to the library.
/// Returns 0 on success, 1 on input errors, 2 on usage errors.
inline int run(int argc, const char* const* argv) {
  CLI::App app{"translod: transport open data as linked data"};
  app.require_subcommand(1);

  std::string in, out = "-", base_text, rules_path, query_path, config_path;
  std::string gazetteer_path, spec_path, format = "ntriples", datahub_path;
  std::string host_flag;
  int port_flag = -1;
  bool raw = false;
  std::vector<std::string> inputs;

  CLI::App* convert_passim = app.add_subcommand(
      "convert-passim", "Convert a Passim CSV directory export to RDF");
  convert_passim->add_option("--in", in, "Passim CSV file")->required();
  convert_passim->add_option("--base", base_text, "base IRI for minted resources")
      ->required();
  convert_passim->add_option("--out", out, "output N-Triples file, '-' for stdout");
  convert_passim->add_flag("--raw", raw,
                           "emit the raw column-per-predicate RDF");
  convert_passim->callback([&] {
    Iri base = detail::parse_base(base_text);
    auto [records, errors] = passim::parse_passim_csv(read_file(in));
    detail::report_row_errors(in, errors);
    Graph g;
    for (const passim::PassimRecord& r : records)
      g.merge(raw ? passim::record_to_raw_rdf(r, base)
                  : passim::record_to_ontology_rdf(r, base));
    detail::write_output(out, serialize_ntriples(g));
  });

  CLI::App* convert_neptune = app.add_subcommand(
      "convert-neptune", "Convert NEPTUNE line description XML files to RDF");
  convert_neptune->add_option("--in", inputs, "NEPTUNE XML files")->required();
  convert_neptune->add_option("--base", base_text, "base IRI for minted resources")
      ->required();
  convert_neptune->add_option("--out", out, "output N-Triples file, '-' for stdout");
  convert_neptune->callback([&] {
    Iri base = detail::parse_base(base_text);
    Graph g;
    for (const std::string& file : inputs) {
      neptune::NeptuneDocument doc =
          neptune::parse_neptune_xml(read_file(file), file);
      g.merge(neptune::neptune_to_rdf(doc, base));
    }
    detail::write_output(out, serialize_ntriples(g));
  });

  CLI::App* transform = app.add_subcommand(
      "transform", "Apply a CONSTRUCT rule file to a raw RDF dump");
  transform->add_option("--in", in, "input N-Triples file")->required();
  transform->add_option("--rules", rules_path, "rule file")->required();
  transform->add_option("--base", base_text, "base IRI for minted resources")
      ->required();
  transform->add_option("--out", out, "output N-Triples file, '-' for stdout");
  transform->callback([&] {
    Iri base = detail::parse_base(base_text);
    Graph raw_graph = parse_ntriples(read_file(in));
    translod::transform::RuleSet rules =
        translod::transform::parse_rules(read_file(rules_path));
    detail::write_output(
        out, serialize_ntriples(
                 translod::transform::apply_rules(raw_graph, rules, base)));
  });

  CLI::App* query = app.add_subcommand(
      "query", "Run a SPARQL-subset query file against an RDF dump");
  query->add_option("--in", in, "input N-Triples file")->required();
  query->add_option("--query", query_path, "query file")->required();
  query->add_option("--out", out, "output file, '-' for stdout");
  query->add_option("--format", format,
                    "CONSTRUCT output: ntriples or turtle")
      ->check(CLI::IsMember({"ntriples", "turtle"}));
  query->callback([&] {
    Graph g = parse_ntriples(read_file(in));
    sparql::Query q = sparql::parse_query(read_file(query_path));
    if (q.is_select()) {
      detail::write_output(out, publish::Publisher::select_tsv(
                                    q.select().projection,
                                    sparql::eval_select(g, q)));
      return;
    }
    Graph constructed = sparql::eval_construct(g, q);
    detail::write_output(out, format == "turtle"
                                  ? serialize_turtle(constructed,
                                                     NamespaceMap::builtins())
                                  : serialize_ntriples(constructed));
  });

  CLI::App* interlink_cmd = app.add_subcommand(
      "interlink", "Discover identity links against a gazetteer");
  interlink_cmd->add_option("--in", in, "input N-Triples file")->required();
  interlink_cmd->add_option("--gazetteer", gazetteer_path, "gazetteer CSV")
      ->required();
  interlink_cmd->add_option("--spec", spec_path, "link spec file")->required();
  interlink_cmd->add_option("--out", out,
                            "output N-Triples file, '-' for stdout");
  interlink_cmd->callback([&] {
    Graph g = parse_ntriples(read_file(in));
    interlink::Gazetteer gaz =
        interlink::parse_gazetteer(read_file(gazetteer_path));
    interlink::LinkSpec spec =
        interlink::parse_link_spec(read_file(spec_path));
    interlink::LinkResult result = interlink::discover_links(g, gaz, spec);
    std::cerr << "translod: " << result.links.size() << " links, "
              << result.skipped_subjects << " subjects skipped\n";
    detail::write_output(out, serialize_ntriples(result.graph));
  });

  CLI::App* void_cmd = app.add_subcommand(
      "void", "Generate VoID metadata for an RDF dump");
  void_cmd->add_option("--in", in, "input N-Triples file")->required();
  void_cmd->add_option("--config", config_path, "dataset config file")
      ->required();
  void_cmd->add_option("--out", out, "output Turtle file, '-' for stdout");
  void_cmd->add_option("--datahub-out", datahub_path,
                       "also write the Data Hub JSON stub here");
  void_cmd->callback([&] {
    Graph g = parse_ntriples(read_file(in));
    publish::DatasetMeta meta =
        detail::meta_from_config(parse_config(read_file(config_path)));
    detail::write_output(out,
                         serialize_turtle(publish::generate_void(g, meta),
                                          NamespaceMap::builtins()));
    if (!datahub_path.empty())
      write_file(datahub_path, publish::datahub_stub(meta));
  });

  CLI::App* sitemap_cmd = app.add_subcommand(
      "sitemap", "Generate the semantic sitemap");
  sitemap_cmd->add_option("--config", config_path, "dataset config file")
      ->required();
  sitemap_cmd->add_option("--out", out, "output XML file, '-' for stdout");
  sitemap_cmd->callback([&] {
    publish::DatasetMeta meta =
        detail::meta_from_config(parse_config(read_file(config_path)));
    detail::write_output(out, publish::generate_sitemap(meta));
  });

  CLI::App* serve = app.add_subcommand(
      "serve", "Serve an RDF dump with dereferenceable URIs");
  serve->add_option("--in", in, "input N-Triples file")->required();
  serve->add_option("--config", config_path, "dataset config file")->required();
  serve->add_option("--host", host_flag, "bind address (overrides config)");
  serve->add_option("--port", port_flag, "port (overrides config)")
      ->check(CLI::Range(0, 65535));
  serve->callback([&] {
    Graph g = parse_ntriples(read_file(in));
    Config cfg = parse_config(read_file(config_path));
    publish::DatasetMeta meta = detail::meta_from_config(cfg);
    publish::ServerConfig server_config =
        detail::server_config_from(cfg, host_flag, port_flag);
    publish::Publisher publisher(std::move(g), std::move(meta), server_config);
    publish::HttpServer server(publisher);
    std::cerr << "translod: serving on " << server_config.host << ":"
              << server_config.port << "\n";
    if (!server.listen()) throw Error("server failed to listen");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "translod: " << e.what() << "\n";
    for (const CLI::App* sub : app.get_subcommands())
      std::cerr << sub->help();
    if (app.get_subcommands().empty()) std::cerr << app.help();
    return 2;
  } catch (const Error& e) {
    std::cerr << "translod: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "translod: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace translod::cli
