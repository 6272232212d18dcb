#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "translod/interlink.hpp"
#include "translod/io.hpp"
#include "translod/namespaces.hpp"
#include "translod/text.hpp"

using namespace translod;
using namespace translod::interlink;

namespace {

const Iri kCoverageClass{std::string(ns::passim) + "Coverage"};
const Iri kCityProp{std::string(ns::passim) + "city"};
const Iri kSameAs{std::string(ns::owl) + "sameAs"};
const Iri kLatProp{"http://example.org/prop/lat"};
const Iri kLonProp{"http://example.org/prop/lon"};

Gazetteer shipped_gazetteer() {
  static const Gazetteer gaz = parse_gazetteer(
      read_file(std::string(TRANSLOD_DATA_DIR) + "/gazetteer_fr.csv"));
  return gaz;
}

LinkSpec shipped_spec() {
  static const LinkSpec spec = parse_link_spec(
      read_file(std::string(TRANSLOD_DATA_DIR) + "/linkspec_city.conf"));
  return spec;
}

// Full-matrix edit distance, kept deliberately different from the two-row
// implementation under test.
std::size_t edit_distance_oracle(std::string_view a, std::string_view b) {
  std::vector<char32_t> ca = text::utf8_decode(a);
  std::vector<char32_t> cb = text::utf8_decode(b);
  std::vector<std::vector<std::size_t>> d(
      ca.size() + 1, std::vector<std::size_t>(cb.size() + 1, 0));
  for (std::size_t i = 0; i <= ca.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= cb.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= ca.size(); ++i)
    for (std::size_t j = 1; j <= cb.size(); ++j) {
      std::size_t cost = ca[i - 1] == cb[j - 1] ? 0 : 1;
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + cost});
    }
  return d[ca.size()][cb.size()];
}

double similarity_oracle(std::string_view a, std::string_view b) {
  std::size_t la = text::utf8_decode(a).size();
  std::size_t lb = text::utf8_decode(b).size();
  if (la == 0 && lb == 0) return 1.0;
  return 1.0 - static_cast<double>(edit_distance_oracle(a, b)) /
                   static_cast<double>(std::max(la, lb));
}

// atan2 formulation, independent of the asin one under test.
double haversine_oracle(double lat1, double lon1, double lat2, double lon2) {
  constexpr double kR = 6371.0;
  constexpr double kRad = 3.14159265358979323846 / 180.0;
  double s1 = std::sin((lat2 - lat1) * kRad / 2.0);
  double s2 = std::sin((lon2 - lon1) * kRad / 2.0);
  double a = s1 * s1 + std::cos(lat1 * kRad) * std::cos(lat2 * kRad) * s2 * s2;
  return 2.0 * kR * std::atan2(std::sqrt(a), std::sqrt(1.0 - a));
}

// All-pairs evaluation over raw triples, no indexing, no early exits.
LinkResult brute_force_links(const Graph& source, const Gazetteer& gaz,
                             const LinkSpec& spec) {
  LinkResult result;
  std::map<std::pair<Iri, Iri>, double> best;
  for (const Triple& t : source.triples()) {
    if (t.predicate != Term{rdf_type()}) continue;
    if (t.object != Term{spec.source_class}) continue;
    const Iri* subject = std::get_if<Iri>(&t.subject);

    std::vector<std::string> labels;
    if (subject)
      for (const Triple& lt : source.triples())
        if (lt.subject == t.subject &&
            lt.predicate == Term{spec.source_label_property})
          if (const Literal* lit = std::get_if<Literal>(&lt.object))
            labels.push_back(normalize_label(lit->lexical));
    if (!subject || labels.empty()) {
      ++result.skipped_subjects;
      continue;
    }

    auto coord = [&](const Iri& prop) -> std::optional<double> {
      for (const Triple& ct : source.triples()) {
        if (ct.subject != t.subject || ct.predicate != Term{prop}) continue;
        const Literal* lit = std::get_if<Literal>(&ct.object);
        if (!lit) continue;
        try {
          std::size_t used = 0;
          double v = std::stod(lit->lexical, &used);
          if (used == lit->lexical.size()) return v;
        } catch (...) {
        }
      }
      return std::nullopt;
    };
    std::optional<double> lat, lon;
    if (spec.source_geo_properties) {
      lat = coord(spec.source_geo_properties->first);
      lon = coord(spec.source_geo_properties->second);
    }

    for (const GazetteerEntry& entry : gaz.entries) {
      if (entry.kind != spec.target_kind) continue;
      double score = 0.0;
      for (const std::string& label : labels)
        score = std::max(
            score, levenshtein_similarity(label, normalize_label(entry.name)));
      bool pass = score >= spec.name_threshold;
      if (pass && spec.geo_threshold_km && lat && lon && entry.latitude &&
          entry.longitude)
        pass = haversine_km(*lat, *lon, *entry.latitude, *entry.longitude) <=
               *spec.geo_threshold_km;
      if (!pass) continue;
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

bool same_links(const LinkResult& a, const LinkResult& b) {
  if (a.skipped_subjects != b.skipped_subjects) return false;
  if (!(a.graph == b.graph)) return false;
  if (a.links.size() != b.links.size()) return false;
  for (std::size_t i = 0; i < a.links.size(); ++i) {
    const Link& x = a.links[i];
    const Link& y = b.links[i];
    if (x.source != y.source || x.target != y.target ||
        x.predicate != y.predicate)
      return false;
    if (std::abs(x.score - y.score) > 1e-12) return false;
  }
  return true;
}

Iri coverage_iri(int n) {
  return Iri{"http://data.lirmm.fr/passim/coverage/" + std::to_string(n)};
}

void add_coverage(Graph& g, const Iri& subject, const std::string& city) {
  g.insert(subject, rdf_type(), Term{kCoverageClass});
  g.insert(subject, kCityProp, Term{Literal::plain(city)});
}

}  // namespace

TEST_CASE("normalize_label folds case, accents and separators") {
  CHECK(normalize_label("Castelnau-le-Lez") == "castelnau le lez");
  CHECK(normalize_label("Provence-Alpes-Côte d'Azur") ==
        "provence alpes cote d azur");
  CHECK(normalize_label("") == "");
  CHECK(normalize_label("MONTPELLIER") == "montpellier");
  CHECK(normalize_label("  Nîmes  ") == "nimes");
  CHECK(normalize_label("Val’d’Oise") == "val d oise");
  CHECK(normalize_label("a\t b\n\nc") == "a b c");
  CHECK(normalize_label("Saint-Étienne") == "saint etienne");
  CHECK(normalize_label("---") == "");
}

TEST_CASE("normalize_label is idempotent") {
  std::vector<std::string> samples = {"Castelnau-le-Lez",
                                      "Provence-Alpes-Côte d'Azur",
                                      "  L'Haÿ-les-Roses ", "ÎLE-DE-FRANCE"};
  for (const std::string& s : samples) {
    std::string once = normalize_label(s);
    CHECK(normalize_label(once) == once);
  }
}

TEST_CASE("levenshtein_similarity matches the pinned examples") {
  CHECK(levenshtein_similarity("montpellier", "montpellier") == 1.0);
  CHECK(levenshtein_similarity("", "abc") == 0.0);
  CHECK(levenshtein_similarity("abc", "") == 0.0);
  CHECK(levenshtein_similarity("", "") == 1.0);
  CHECK_THAT(levenshtein_similarity("kitten", "sitting"),
             Catch::Matchers::WithinAbs(1.0 - 3.0 / 7.0, 1e-12));
}

TEST_CASE("levenshtein_similarity counts code points, not bytes") {
  // One substitution over five code points even though the byte
  // representations differ in length.
  CHECK_THAT(levenshtein_similarity("nîmes", "nimes"),
             Catch::Matchers::WithinAbs(1.0 - 1.0 / 5.0, 1e-12));
  CHECK(levenshtein_similarity("été", "ete") ==
        similarity_oracle("été", "ete"));
}

TEST_CASE("levenshtein_similarity agrees with the full-matrix oracle") {
  std::mt19937 rng(4411);
  std::vector<std::string> alphabet = {"a", "b", "c", " ", "é", "ü", "œ"};
  auto random_word = [&](std::size_t max_len) {
    std::string s;
    std::size_t len = rng() % (max_len + 1);
    for (std::size_t i = 0; i < len; ++i)
      s += alphabet[rng() % alphabet.size()];
    return s;
  };
  for (int round = 0; round < 300; ++round) {
    std::string a = random_word(12);
    std::string b = random_word(12);
    double got = levenshtein_similarity(a, b);
    double want = similarity_oracle(a, b);
    INFO("a='" << a << "' b='" << b << "'");
    CHECK_THAT(got, Catch::Matchers::WithinAbs(want, 1e-12));
    CHECK_THAT(levenshtein_similarity(b, a),
               Catch::Matchers::WithinAbs(got, 1e-12));
    CHECK(got >= 0.0);
    CHECK(got <= 1.0);
  }
}

TEST_CASE("haversine_km handles poles, antipodes and identity") {
  CHECK(haversine_km(43.61, 3.88, 43.61, 3.88) == 0.0);
  CHECK_THAT(haversine_km(0.0, 0.0, 0.0, 180.0),
             Catch::Matchers::WithinAbs(20015.087, 0.001));
  CHECK_THAT(haversine_km(90.0, 0.0, -90.0, 0.0),
             Catch::Matchers::WithinAbs(20015.087, 0.001));
  CHECK_THAT(haversine_km(0.0, 0.0, 0.0, 90.0),
             Catch::Matchers::WithinAbs(20015.087 / 2.0, 0.001));
}

TEST_CASE("haversine_km from the sample stop matches the oracle") {
  double stop_lat = 46.5263907175936;
  double stop_lon = 5.7949447631835940;
  Gazetteer gaz = shipped_gazetteer();
  for (const GazetteerEntry& e : gaz.entries) {
    if (!e.latitude) continue;
    double got = haversine_km(stop_lat, stop_lon, *e.latitude, *e.longitude);
    double want = haversine_oracle(stop_lat, stop_lon, *e.latitude,
                                   *e.longitude);
    INFO(e.name);
    CHECK_THAT(got, Catch::Matchers::WithinAbs(want, 1e-6));
    CHECK(got >= 0.0);
  }
}

TEST_CASE("haversine_km agrees with the atan2 oracle on random points") {
  std::mt19937 rng(930);
  std::uniform_real_distribution<double> lat(-90.0, 90.0);
  std::uniform_real_distribution<double> lon(-180.0, 180.0);
  for (int round = 0; round < 300; ++round) {
    double a1 = lat(rng), o1 = lon(rng), a2 = lat(rng), o2 = lon(rng);
    double got = haversine_km(a1, o1, a2, o2);
    CHECK_THAT(got,
               Catch::Matchers::WithinAbs(haversine_oracle(a1, o1, a2, o2),
                                          1e-6));
    CHECK_THAT(haversine_km(a2, o2, a1, o1),
               Catch::Matchers::WithinAbs(got, 1e-9));
  }
}

TEST_CASE("shipped gazetteer parses with a hundred communes") {
  Gazetteer gaz = shipped_gazetteer();
  std::size_t cities = 0;
  std::set<std::string> iris;
  for (const GazetteerEntry& e : gaz.entries) {
    if (e.kind == PlaceKind::City) ++cities;
    CHECK(iris.insert(e.iri.value).second);
    CHECK_FALSE(e.name.empty());
    CHECK(e.latitude.has_value() == e.longitude.has_value());
    if (e.latitude) {
      CHECK(*e.latitude >= -90.0);
      CHECK(*e.latitude <= 90.0);
      CHECK(*e.longitude >= -180.0);
      CHECK(*e.longitude <= 180.0);
    }
  }
  CHECK(cities == 100);
  CHECK(gaz.entries.size() == 112);

  const GazetteerEntry& first = gaz.entries.front();
  CHECK(first.iri.value == "http://gazetteer.example/commune/montpellier");
  CHECK(first.name == "Montpellier");
  CHECK(first.insee_code == "34172");
  CHECK_THAT(*first.latitude, Catch::Matchers::WithinAbs(43.6108, 1e-9));
}

TEST_CASE("gazetteer names are unambiguous under the matching threshold") {
  // Guards the precision-1.0 acceptance fixture: within one kind, every
  // pair of normalized names stays strictly below 0.85 similarity.
  Gazetteer gaz = shipped_gazetteer();
  std::map<PlaceKind, std::vector<std::string>> names;
  for (const GazetteerEntry& e : gaz.entries)
    names[e.kind].push_back(normalize_label(e.name));
  for (const auto& [kind, list] : names) {
    for (std::size_t i = 0; i < list.size(); ++i)
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        INFO("'" << list[i] << "' vs '" << list[j] << "'");
        CHECK(levenshtein_similarity(list[i], list[j]) < 0.85);
      }
  }
}

TEST_CASE("gazetteer parse errors carry line numbers") {
  SECTION("missing header") {
    CHECK_THROWS_AS(parse_gazetteer("http://x.example/a;A;city;;;\n"),
                    SyntaxError);
  }
  SECTION("empty input") {
    try {
      parse_gazetteer("");
      FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
      CHECK(e.line == 1);
    }
  }
  SECTION("wrong field count") {
    try {
      parse_gazetteer("iri;name;kind;lat;lon;insee_code\nhttp://x.example/a;A;city\n");
      FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
      CHECK(e.line == 2);
    }
  }
  SECTION("invalid IRI") {
    CHECK_THROWS_AS(
        parse_gazetteer("iri;name;kind;lat;lon;insee_code\nnot an iri;A;city;;;\n"),
        SyntaxError);
  }
  SECTION("duplicate IRI") {
    std::string text =
        "iri;name;kind;lat;lon;insee_code\n"
        "http://x.example/a;A;city;;;\n"
        "http://x.example/a;B;city;;;\n";
    try {
      parse_gazetteer(text);
      FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
      CHECK(e.line == 3);
    }
  }
  SECTION("unknown kind") {
    CHECK_THROWS_AS(
        parse_gazetteer("iri;name;kind;lat;lon;insee_code\nhttp://x.example/a;A;village;;;\n"),
        SyntaxError);
  }
  SECTION("empty name") {
    CHECK_THROWS_AS(
        parse_gazetteer("iri;name;kind;lat;lon;insee_code\nhttp://x.example/a;;city;;;\n"),
        SyntaxError);
  }
  SECTION("lat without lon") {
    CHECK_THROWS_AS(
        parse_gazetteer("iri;name;kind;lat;lon;insee_code\nhttp://x.example/a;A;city;43.6;;\n"),
        SyntaxError);
  }
  SECTION("lat out of range") {
    CHECK_THROWS_AS(
        parse_gazetteer("iri;name;kind;lat;lon;insee_code\nhttp://x.example/a;A;city;91.0;3.0;\n"),
        SyntaxError);
  }
  SECTION("lat not a number") {
    CHECK_THROWS_AS(
        parse_gazetteer("iri;name;kind;lat;lon;insee_code\nhttp://x.example/a;A;city;north;3.0;\n"),
        SyntaxError);
  }
  SECTION("invalid utf-8") { CHECK_THROWS_AS(parse_gazetteer("\xff"), Error); }
}

TEST_CASE("gazetteer accepts comments, blank lines and CRLF") {
  std::string text =
      "# toy gazetteer\r\n"
      "\r\n"
      "iri;name;kind;lat;lon;insee_code\r\n"
      "http://x.example/a;Montpellier;city;43.6108;3.8767;34172\r\n"
      "# trailing note\r\n"
      "http://x.example/b;Hérault;department;;;34\r\n";
  Gazetteer gaz = parse_gazetteer(text);
  REQUIRE(gaz.entries.size() == 2);
  CHECK(gaz.entries[0].kind == PlaceKind::City);
  CHECK(gaz.entries[0].latitude.has_value());
  CHECK(gaz.entries[1].kind == PlaceKind::Department);
  CHECK_FALSE(gaz.entries[1].latitude.has_value());
  CHECK(gaz.entries[1].insee_code == "34");
}

TEST_CASE("shipped link spec targets coverage cities") {
  LinkSpec spec = shipped_spec();
  CHECK(spec.source_class == kCoverageClass);
  CHECK(spec.source_label_property == kCityProp);
  CHECK(spec.target_kind == PlaceKind::City);
  CHECK(spec.name_threshold == 0.85);
  CHECK_FALSE(spec.geo_threshold_km.has_value());
  CHECK_FALSE(spec.source_geo_properties.has_value());
  CHECK(spec.link_predicate == kSameAs);
}

TEST_CASE("link spec parsing validates keys and values") {
  std::string base =
      "source_class = passim:Coverage\n"
      "source_label_property = passim:city\n"
      "target_kind = city\n"
      "name_threshold = 0.85\n";
  SECTION("angle-bracketed and bare IRIs") {
    LinkSpec spec = parse_link_spec(
        "source_class = <http://example.org/C>\n"
        "source_label_property = http://example.org/p\n"
        "target_kind = region\n"
        "name_threshold = 1\n"
        "link_predicate = rdfs:seeAlso\n");
    CHECK(spec.source_class.value == "http://example.org/C");
    CHECK(spec.source_label_property.value == "http://example.org/p");
    CHECK(spec.target_kind == PlaceKind::Region);
    CHECK(spec.link_predicate.value ==
          std::string(ns::rdfs) + "seeAlso");
  }
  SECTION("geo options") {
    LinkSpec spec = parse_link_spec(
        base +
        "geo_threshold_km = 25\n"
        "source_geo_properties = <http://example.org/lat> <http://example.org/lon>\n");
    REQUIRE(spec.geo_threshold_km.has_value());
    CHECK(*spec.geo_threshold_km == 25.0);
    REQUIRE(spec.source_geo_properties.has_value());
    CHECK(spec.source_geo_properties->first.value == "http://example.org/lat");
    CHECK(spec.source_geo_properties->second.value == "http://example.org/lon");
  }
  SECTION("missing mandatory key") {
    CHECK_THROWS_AS(parse_link_spec("target_kind = city\n"), Error);
  }
  SECTION("unknown key rejected") {
    CHECK_THROWS_AS(parse_link_spec(base + "blocking = tokens\n"), Error);
  }
  SECTION("threshold out of range") {
    CHECK_THROWS_AS(parse_link_spec(
                        "source_class = passim:Coverage\n"
                        "source_label_property = passim:city\n"
                        "target_kind = city\n"
                        "name_threshold = 1.5\n"),
                    RangeError);
  }
  SECTION("negative geo threshold") {
    CHECK_THROWS_AS(parse_link_spec(base + "geo_threshold_km = -3\n"),
                    RangeError);
  }
  SECTION("geo properties need exactly two IRIs") {
    CHECK_THROWS_AS(
        parse_link_spec(base + "source_geo_properties = <http://example.org/lat>\n"),
        Error);
  }
  SECTION("unknown prefix in qname") {
    CHECK_THROWS_AS(parse_link_spec(
                        "source_class = bogus:Coverage\n"
                        "source_label_property = passim:city\n"
                        "target_kind = city\n"
                        "name_threshold = 0.85\n"),
                    UnknownPrefixError);
  }
  SECTION("unknown target kind") {
    CHECK_THROWS_AS(parse_link_spec(
                        "source_class = passim:Coverage\n"
                        "source_label_property = passim:city\n"
                        "target_kind = hamlet\n"
                        "name_threshold = 0.85\n"),
                    Error);
  }
}

TEST_CASE("discover_links finds the uppercase Montpellier") {
  Graph g;
  add_coverage(g, coverage_iri(1), "MONTPELLIER");
  LinkResult result = discover_links(g, shipped_gazetteer(), shipped_spec());
  REQUIRE(result.links.size() == 1);
  CHECK(result.links[0].source == coverage_iri(1));
  CHECK(result.links[0].target.value ==
        "http://gazetteer.example/commune/montpellier");
  CHECK(result.links[0].score == 1.0);
  CHECK(result.links[0].predicate == kSameAs);
  CHECK(result.graph.size() == 1);
  CHECK(result.graph.contains(
      Triple{Term{coverage_iri(1)}, Term{kSameAs},
             Term{Iri{"http://gazetteer.example/commune/montpellier"}}}));
  CHECK(result.skipped_subjects == 0);
}

TEST_CASE("discover_links on an empty graph yields nothing") {
  LinkResult result =
      discover_links(Graph{}, shipped_gazetteer(), shipped_spec());
  CHECK(result.links.empty());
  CHECK(result.graph.size() == 0);
  CHECK(result.skipped_subjects == 0);
}

TEST_CASE("threshold 1.0 with an absent name yields nothing") {
  Graph g;
  add_coverage(g, coverage_iri(1), "Zurich");
  LinkSpec spec = shipped_spec();
  spec.name_threshold = 1.0;
  LinkResult result = discover_links(g, shipped_gazetteer(), spec);
  CHECK(result.links.empty());
}

TEST_CASE("subjects without usable labels are counted, not linked") {
  Graph g;
  // Typed subject with no label triple.
  g.insert(coverage_iri(1), rdf_type(), Term{kCoverageClass});
  // Typed blank-node subject; no IRI to link from.
  g.insert(Term{BlankNode{"b0"}}, Term{rdf_type()}, Term{kCoverageClass});
  // IRI-valued label does not count as a label.
  g.insert(coverage_iri(2), rdf_type(), Term{kCoverageClass});
  g.insert(coverage_iri(2), kCityProp,
           Term{Iri{"http://example.org/city/montpellier"}});
  // A healthy subject for contrast.
  add_coverage(g, coverage_iri(3), "Montpellier");
  LinkResult result = discover_links(g, shipped_gazetteer(), shipped_spec());
  CHECK(result.skipped_subjects == 3);
  REQUIRE(result.links.size() == 1);
  CHECK(result.links[0].source == coverage_iri(3));
}

TEST_CASE("a pair keeps the best score across multiple labels") {
  Graph g;
  g.insert(coverage_iri(1), rdf_type(), Term{kCoverageClass});
  g.insert(coverage_iri(1), kCityProp, Term{Literal::plain("Montpellier")});
  g.insert(coverage_iri(1), kCityProp, Term{Literal::plain("Montpelier")});
  LinkSpec spec = shipped_spec();
  spec.name_threshold = 0.5;
  LinkResult result = discover_links(g, shipped_gazetteer(), spec);
  std::size_t montpellier_links = 0;
  for (const Link& link : result.links)
    if (link.target.value == "http://gazetteer.example/commune/montpellier") {
      ++montpellier_links;
      CHECK(link.score == 1.0);
    }
  CHECK(montpellier_links == 1);
}

TEST_CASE("geo threshold prunes same-name candidates by distance") {
  Gazetteer gaz;
  gaz.entries.push_back({Iri{"http://x.example/near"}, "Valmont",
                         PlaceKind::City, 43.60, 3.88, std::nullopt});
  gaz.entries.push_back({Iri{"http://x.example/far"}, "Valmont",
                         PlaceKind::City, 49.00, 0.50, std::nullopt});
  gaz.entries.push_back({Iri{"http://x.example/nocoords"}, "Valmont",
                         PlaceKind::City, std::nullopt, std::nullopt,
                         std::nullopt});

  LinkSpec spec = shipped_spec();
  spec.geo_threshold_km = 50.0;
  spec.source_geo_properties = {{kLatProp, kLonProp}};

  Graph g;
  add_coverage(g, coverage_iri(1), "Valmont");
  g.insert(coverage_iri(1), kLatProp, Term{Literal::plain("43.61")});
  g.insert(coverage_iri(1), kLonProp, Term{Literal::plain("3.87")});

  SECTION("with source coordinates, distance is conjunctive") {
    LinkResult result = discover_links(g, gaz, spec);
    std::set<std::string> targets;
    for (const Link& link : result.links) targets.insert(link.target.value);
    // The far entry fails the distance check; the coordinate-less entry
    // cannot be checked, so the name match stands alone.
    CHECK(targets == std::set<std::string>{"http://x.example/near",
                                           "http://x.example/nocoords"});
  }
  SECTION("without source coordinates, the name decides") {
    Graph bare;
    add_coverage(bare, coverage_iri(2), "Valmont");
    LinkResult result = discover_links(bare, gaz, spec);
    CHECK(result.links.size() == 3);
  }
  SECTION("equality with the brute-force oracle") {
    CHECK(same_links(discover_links(g, gaz, spec),
                     brute_force_links(g, gaz, spec)));
  }
}

TEST_CASE("links come out sorted and mirrored in the graph") {
  Graph g;
  add_coverage(g, coverage_iri(9), "Toulouse");
  add_coverage(g, coverage_iri(2), "Nîmes");
  add_coverage(g, coverage_iri(5), "Béziers");
  LinkResult result = discover_links(g, shipped_gazetteer(), shipped_spec());
  REQUIRE(result.links.size() == 3);
  CHECK(std::is_sorted(result.links.begin(), result.links.end(),
                       [](const Link& a, const Link& b) {
                         return std::tie(a.source, a.target) <
                                std::tie(b.source, b.target);
                       }));
  CHECK(result.graph.size() == result.links.size());
  for (const Link& link : result.links)
    CHECK(result.graph.contains(Triple{Term{link.source}, Term{link.predicate},
                                       Term{link.target}}));
}

TEST_CASE("raising the threshold never adds links") {
  Graph g;
  add_coverage(g, coverage_iri(1), "Montpelier");
  add_coverage(g, coverage_iri(2), "Toulon");
  add_coverage(g, coverage_iri(3), "Narbone");
  add_coverage(g, coverage_iri(4), "Zurich");

  auto keys = [&](double threshold) {
    LinkSpec spec = shipped_spec();
    spec.name_threshold = threshold;
    std::set<std::pair<std::string, std::string>> out;
    for (const Link& link : discover_links(g, shipped_gazetteer(), spec).links)
      out.emplace(link.source.value, link.target.value);
    return out;
  };
  std::set<std::pair<std::string, std::string>> prev;
  for (double threshold : {1.0, 0.9, 0.8, 0.6, 0.4, 0.0}) {
    std::set<std::pair<std::string, std::string>> cur = keys(threshold);
    CHECK(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
    prev = cur;
  }
}

TEST_CASE("emitted scores stay within the threshold band") {
  Graph g;
  add_coverage(g, coverage_iri(1), "Montpelier");
  add_coverage(g, coverage_iri(2), "Tolouse");
  add_coverage(g, coverage_iri(3), "Perpinan");
  LinkSpec spec = shipped_spec();
  spec.name_threshold = 0.7;
  LinkResult result = discover_links(g, shipped_gazetteer(), spec);
  CHECK_FALSE(result.links.empty());
  for (const Link& link : result.links) {
    CHECK(link.score >= spec.name_threshold);
    CHECK(link.score <= 1.0);
  }
}

TEST_CASE("discover_links matches the brute-force oracle on random fixtures") {
  Gazetteer gaz = shipped_gazetteer();
  std::vector<std::string> pool;
  for (const GazetteerEntry& e : gaz.entries) pool.push_back(e.name);
  pool.insert(pool.end(), {"Zurich", "Genève", "Montpelier", "Narbone", ""});

  std::mt19937 rng(5150);
  for (int round = 0; round < 40; ++round) {
    Graph g;
    std::size_t subjects = 1 + rng() % 8;
    for (std::size_t i = 0; i < subjects; ++i) {
      Iri subject = coverage_iri(static_cast<int>(i));
      g.insert(subject, rdf_type(), Term{kCoverageClass});
      std::size_t labels = rng() % 3;
      for (std::size_t k = 0; k < labels; ++k)
        g.insert(subject, kCityProp,
                 Term{Literal::plain(pool[rng() % pool.size()])});
      if (rng() % 4 == 0) {
        g.insert(subject, kLatProp,
                 Term{Literal::plain(std::to_string(41.0 + rng() % 9))});
        g.insert(subject, kLonProp,
                 Term{Literal::plain(std::to_string(-1.0 + rng() % 9))});
      }
    }
    LinkSpec spec = shipped_spec();
    spec.name_threshold = (rng() % 2 == 0) ? 0.85 : 0.6;
    if (rng() % 2 == 0) {
      spec.geo_threshold_km = 150.0;
      spec.source_geo_properties = {{kLatProp, kLonProp}};
    }
    INFO("round " << round);
    CHECK(same_links(discover_links(g, gaz, spec),
                     brute_force_links(g, gaz, spec)));
  }
}

TEST_CASE("twenty-city fixture links with full precision and recall") {
  // Ten exact names, five case or accent perturbations, five absent.
  std::vector<std::pair<std::string, std::string>> expected = {
      {"Montpellier", "montpellier"},
      {"Castelnau-le-Lez", "castelnau-le-lez"},
      {"Béziers", "beziers"},
      {"Sète", "sete"},
      {"Nîmes", "nimes"},
      {"Toulouse", "toulouse"},
      {"Marseille", "marseille"},
      {"Lyon", "lyon"},
      {"Bordeaux", "bordeaux"},
      {"Perpignan", "perpignan"},
      {"MONTPELLIER", "montpellier"},
      {"beziers", "beziers"},
      {"NÎMES", "nimes"},
      {"Saint-Etienne", "saint-etienne"},
      {"sete", "sete"},
  };
  std::vector<std::string> absent = {"Zurich", "Genève", "Barcelone", "Turin",
                                     "Bruxelles"};

  Graph g;
  std::map<std::string, std::string> want;
  int n = 0;
  for (const auto& [label, slug] : expected) {
    Iri subject = coverage_iri(n++);
    add_coverage(g, subject, label);
    want[subject.value] = "http://gazetteer.example/commune/" + slug;
  }
  for (const std::string& label : absent) add_coverage(g, coverage_iri(n++), label);

  LinkResult result = discover_links(g, shipped_gazetteer(), shipped_spec());

  std::map<std::string, std::string> got;
  for (const Link& link : result.links) {
    CHECK_FALSE(got.contains(link.source.value));
    got[link.source.value] = link.target.value;
    CHECK(link.score == 1.0);
  }
  CHECK(got == want);
  CHECK(result.links.size() == 15);
  CHECK(same_links(result,
                   brute_force_links(g, shipped_gazetteer(), shipped_spec())));
}

TEST_CASE("place kinds parse strictly") {
  CHECK(parse_place_kind("city") == PlaceKind::City);
  CHECK(parse_place_kind("department") == PlaceKind::Department);
  CHECK(parse_place_kind("region") == PlaceKind::Region);
  CHECK_THROWS_AS(parse_place_kind("City"), Error);
  CHECK_THROWS_AS(parse_place_kind(""), Error);
}
