#include <catch2/catch_amalgamated.hpp>

#include <optional>
#include <string>

#include <httplib.h>

#include "translod/http_server.hpp"
#include "translod/passim.hpp"
#include "translod/server.hpp"

using namespace translod;
using namespace translod::publish;

namespace {

const std::string kTamLine =
    "42;TaM;agglomération;Languedoc-Roussillon;Hérault;Montpellier;"
    "Bus, Tramway;Horaires;Oui;;http://www.tam-way.com;Non;;;;;;"
    "Montpellier, Castelnau-le-Lez;09/06/2010;04/08/2011";

const Iri kBase{"http://data.lirmm.fr/"};

const std::string kTamQuery =
    "SELECT DISTINCT ?city WHERE { ?s passim:serviceName ?o . "
    "?s passim:cityThrough ?city . FILTER (?o = \"TaM\") }";

Publisher make_publisher() {
  auto [records, errors] = passim::parse_passim_csv(kTamLine + "\n");
  REQUIRE(errors.empty());
  Graph g = passim::record_to_ontology_rdf(records.at(0), kBase);

  DatasetMeta meta;
  meta.dataset_iri = Iri{"http://data.lirmm.fr/dataset/passim"};
  meta.title = "Passim transport dataset";
  meta.base = kBase;
  meta.vocabularies = {Iri{"http://data.lirmm.fr/ontologies/passim"}};
  meta.example_resources = {Iri{"http://data.lirmm.fr/passim/service/42"}};
  return Publisher(std::move(g), std::move(meta));
}

}  // namespace

TEST_CASE("http server round-trips every route through a real socket") {
  Publisher publisher = make_publisher();
  HttpServer server(publisher);
  int port = server.start_background();
  REQUIRE(port > 0);
  httplib::Client client("127.0.0.1", port);

  SECTION("resource dereferencing matches the in-process handler") {
    auto res = client.Get("/resource/passim/service/42",
                          {{"Accept", "text/turtle"}});
    REQUIRE(res);
    HttpResponse want =
        publisher.resource("/resource/passim/service/42", "text/turtle");
    CHECK(res->status == want.status);
    CHECK(res->get_header_value("Content-Type").starts_with("text/turtle"));
    CHECK(res->body == want.body);
  }
  SECTION("html negotiation over the wire") {
    auto res = client.Get("/resource/passim/service/42",
                          {{"Accept", "text/html"}});
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(res->get_header_value("Content-Type").starts_with("text/html"));
    CHECK(res->body.find("TaM") != std::string::npos);
  }
  SECTION("unknown resource is 404, bad accept is 406") {
    auto missing = client.Get("/resource/nothing", {{"Accept", "text/turtle"}});
    REQUIRE(missing);
    CHECK(missing->status == 404);
    auto image = client.Get("/resource/passim/service/42",
                            {{"Accept", "image/png"}});
    REQUIRE(image);
    CHECK(image->status == 406);
  }
  SECTION("sparql over GET equals in-process evaluation") {
    httplib::Params params{{"query", kTamQuery}};
    auto res = client.Get("/sparql", params, httplib::Headers{});
    REQUIRE(res);
    HttpResponse want = publisher.sparql(kTamQuery, std::nullopt);
    CHECK(res->status == 200);
    CHECK(res->body == want.body);
    CHECK(res->get_header_value("Content-Type")
              .starts_with("text/tab-separated-values"));
  }
  SECTION("sparql over form-encoded POST") {
    httplib::Params params{{"query", kTamQuery}};
    auto res = client.Post("/sparql", params);
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(res->body == publisher.sparql(kTamQuery, std::nullopt).body);
  }
  SECTION("sparql errors surface as HTTP statuses") {
    auto no_query = client.Get("/sparql");
    REQUIRE(no_query);
    CHECK(no_query->status == 400);
    httplib::Params params{{"query", "SELECT"}};
    auto bad = client.Get("/sparql", params, httplib::Headers{});
    REQUIRE(bad);
    CHECK(bad->status == 400);
    auto put = client.Put("/sparql", "query=SELECT", "text/plain");
    REQUIRE(put);
    CHECK(put->status == 405);
    auto del = client.Delete("/sparql");
    REQUIRE(del);
    CHECK(del->status == 405);
  }
  SECTION("metadata routes serve the frozen documents") {
    auto void_res = client.Get("/void");
    REQUIRE(void_res);
    CHECK(void_res->status == 200);
    CHECK(void_res->body == publisher.void_document().body);

    auto sitemap = client.Get("/sitemap.xml");
    REQUIRE(sitemap);
    CHECK(sitemap->status == 200);
    CHECK(sitemap->body == publisher.sitemap_document().body);
    CHECK(sitemap->get_header_value("Content-Type")
              .starts_with("application/xml"));

    auto dump = client.Get("/dump.nt");
    REQUIRE(dump);
    CHECK(dump->status == 200);
    CHECK(dump->body == publisher.dump_document().body);
    CHECK(parse_ntriples(dump->body) == publisher.graph());
  }

  server.stop();
}
