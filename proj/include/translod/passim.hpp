#pragma once

#include <array>
#include <chrono>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "translod/error.hpp"
#include "translod/graph.hpp"
#include "translod/namespaces.hpp"
#include "translod/text.hpp"

namespace translod::passim {

/// Raw-phase namespace: property local names mirror the CSV column headers.
inline constexpr std::string_view kRawNs = "http://data.lirmm.fr/raw/passim#";

/// The 20 directory columns, in file order, as sanitized local names.
inline const std::array<std::string_view, 20>& raw_column_names() {
  static const std::array<std::string_view, 20> names = {
      "sheetNumber",
      "serviceName",
      "coverageService",
      "region",
      "department",
      "city",
      "modesOfTransport",
      "typeOfService",
      "networkAccessibilityForDisabledPerson",
      "landInformations",
      "website",
      "websiteAccessibilityForDisabledPerson",
      "informationPoints",
      "remark",
      "comments",
      "sms",
      "mobileApplication",
      "listOfCitiesCoveredPostalCode",
      "sheetCreated",
      "sheetModified",
  };
  return names;
}

struct PassimRecord {
  unsigned sheet_number = 0;
  std::string service_name;
  std::string coverage_level;
  std::string region;
  std::string department;
  std::string city;  // kept verbatim; "N/A" is dropped by the ontology phase
  std::vector<std::string> modes;
  std::vector<std::string> service_types;
  std::string network_accessible;
  std::string land_information;
  std::string website;
  std::string website_accessible;
  std::string information_points;
  std::string remark;
  std::string comments;
  std::string sms;
  std::string mobile_application;
  std::vector<std::string> cities_covered;
  std::optional<std::chrono::year_month_day> created;
  std::optional<std::chrono::year_month_day> modified;
};

struct RowError {
  std::size_t line;
  std::string reason;
};

/// Splits a multi-valued cell on ',', trimming each element and dropping
/// empties: "Autocar, Covoiturage" -> {"Autocar", "Covoiturage"}.
inline std::vector<std::string> split_multivalue(std::string_view cell) {
  std::vector<std::string> out;
  for (const std::string& piece : text::split(cell, ',')) {
    std::string trimmed = text::trim(piece);
    if (!trimmed.empty()) out.push_back(std::move(trimmed));
  }
  return out;
}

/// Parses a strict dd/mm/yyyy cell (day-first, as in the French source data).
inline std::chrono::year_month_day parse_fr_date(std::string_view cell) {
  auto bad = [&]() -> BadDateError {
    return BadDateError("bad date: '" + std::string(cell) + "' (want dd/mm/yyyy)");
  };
  if (cell.size() != 10 || cell[2] != '/' || cell[5] != '/') throw bad();
  for (std::size_t i : {0u, 1u, 3u, 4u, 6u, 7u, 8u, 9u})
    if (cell[i] < '0' || cell[i] > '9') throw bad();
  auto num = [&](std::size_t at, std::size_t len) {
    int v = 0;
    for (std::size_t i = at; i < at + len; ++i) v = v * 10 + (cell[i] - '0');
    return v;
  };
  std::chrono::year_month_day ymd{std::chrono::year{num(6, 4)},
                                  std::chrono::month{static_cast<unsigned>(num(3, 2))},
                                  std::chrono::day{static_cast<unsigned>(num(0, 2))}};
  if (!ymd.ok()) throw bad();
  return ymd;
}

inline std::string to_iso_date(const std::chrono::year_month_day& d) {
  char buf[11];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(d.year()),
                static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
  return buf;
}

inline std::string to_fr_date(const std::chrono::year_month_day& d) {
  char buf[11];
  std::snprintf(buf, sizeof(buf), "%02u/%02u/%04d", static_cast<unsigned>(d.day()),
                static_cast<unsigned>(d.month()), static_cast<int>(d.year()));
  return buf;
}

/// Parses the semicolon-separated directory export. Malformed rows are
/// reported and skipped; only invalid UTF-8 fails the whole file.
inline std::pair<std::vector<PassimRecord>, std::vector<RowError>>
parse_passim_csv(std::string_view input) {
  std::size_t bad = 0;
  if (!text::utf8_valid(input, &bad))
    throw Error("passim csv: invalid UTF-8 at byte " + std::to_string(bad));

  std::vector<PassimRecord> records;
  std::vector<RowError> errors;

  std::size_t line_no = 0;
  std::size_t start = 0;
  bool first_content_line = true;
  while (start <= input.size()) {
    std::size_t end = input.find('\n', start);
    if (end == std::string_view::npos) end = input.size();
    ++line_no;
    std::string_view line = input.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::size_t next = end == input.size() ? input.size() + 1 : end + 1;
    start = next;
    if (text::trim(line).empty()) continue;

    std::vector<std::string> cells = text::split(line, ';');
    bool is_first = first_content_line;
    first_content_line = false;
    std::string head = text::trim(cells[0]);
    bool numeric_head = !head.empty() &&
                        head.find_first_not_of("0123456789") == std::string::npos;
    if (is_first && !numeric_head) continue;  // header line

    if (cells.size() != 20) {
      errors.push_back({line_no, "expected 20 fields, got " +
                                     std::to_string(cells.size())});
      continue;
    }
    if (!numeric_head || head.size() > 9) {
      errors.push_back({line_no, "sheet number is not a positive integer: '" +
                                     cells[0] + "'"});
      continue;
    }
    unsigned sheet = 0;
    for (char c : head) sheet = sheet * 10 + static_cast<unsigned>(c - '0');
    if (sheet == 0) {
      errors.push_back({line_no, "sheet number must be positive"});
      continue;
    }

    PassimRecord r;
    r.sheet_number = sheet;
    r.service_name = cells[1];
    r.coverage_level = cells[2];
    r.region = cells[3];
    r.department = cells[4];
    r.city = cells[5];
    r.modes = split_multivalue(cells[6]);
    r.service_types = split_multivalue(cells[7]);
    r.network_accessible = cells[8];
    r.land_information = cells[9];
    r.website = cells[10];
    r.website_accessible = cells[11];
    r.information_points = cells[12];
    r.remark = cells[13];
    r.comments = cells[14];
    r.sms = cells[15];
    r.mobile_application = cells[16];
    r.cities_covered = split_multivalue(cells[17]);
    try {
      if (!text::trim(cells[18]).empty()) r.created = parse_fr_date(text::trim(cells[18]));
      if (!text::trim(cells[19]).empty()) r.modified = parse_fr_date(text::trim(cells[19]));
    } catch (const BadDateError& e) {
      errors.push_back({line_no, e.what()});
      continue;
    }
    if (r.created && r.modified &&
        std::chrono::sys_days(*r.created) > std::chrono::sys_days(*r.modified)) {
      errors.push_back({line_no, "sheet created after sheet modified"});
      continue;
    }
    records.push_back(std::move(r));
  }
  return {std::move(records), std::move(errors)};
}

/// Cell values in CSV form, matching raw_column_names() by index. Lists are
/// rejoined with ", "; dates re-rendered as dd/mm/yyyy.
inline std::array<std::string, 20> raw_cell_values(const PassimRecord& r) {
  auto join = [](const std::vector<std::string>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ", ";
      out += v[i];
    }
    return out;
  };
  return {std::to_string(r.sheet_number),
          r.service_name,
          r.coverage_level,
          r.region,
          r.department,
          r.city,
          join(r.modes),
          join(r.service_types),
          r.network_accessible,
          r.land_information,
          r.website,
          r.website_accessible,
          r.information_points,
          r.remark,
          r.comments,
          r.sms,
          r.mobile_application,
          join(r.cities_covered),
          r.created ? to_fr_date(*r.created) : "",
          r.modified ? to_fr_date(*r.modified) : ""};
}

/// Phase one of the two-phase pipeline: gross RDF with no ontology, one
/// plain-literal triple per non-empty column. Multi-valued cells stay whole;
/// the transformation rules split them later.
inline Graph record_to_raw_rdf(const PassimRecord& r, const Iri& base) {
  Graph g;
  Iri subj{base.value + "raw/passim/" + std::to_string(r.sheet_number)};
  const auto& names = raw_column_names();
  auto values = raw_cell_values(r);
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (values[i].empty()) continue;
    g.insert(subj, Iri{std::string(kRawNs) + std::string(names[i])},
             Literal::plain(values[i]));
  }
  return g;
}

/// The Passim ontology terms: 4 classes, and the reconstructed property
/// list covering every directory column plus cityThrough.
struct PassimVocabulary {
  static Iri cls(std::string_view local) {
    return Iri{std::string(ns::passim) + std::string(local)};
  }

  static const std::array<Iri, 4>& classes() {
    static const std::array<Iri, 4> c = {
        cls("TransportServiceInformation"), cls("Mode"), cls("Service"),
        cls("Coverage")};
    return c;
  }

  static const std::vector<Iri>& properties() {
    static const std::vector<Iri> p = [] {
      std::vector<Iri> v;
      for (const char* local :
           {"serviceName", "coverage", "coverageLevel", "region", "department",
            "city", "transportMode", "serviceType", "networkAccessibility",
            "landInformation", "website", "websiteAccessibility",
            "informationPoints", "remark", "comments", "sms",
            "mobileApplication", "cityThrough", "created", "modified"})
        v.push_back(cls(local));
      return v;
    }();
    return p;
  }

  /// rdf:type plus the property list; nothing else may appear as a
  /// predicate in converted data.
  static bool allows_predicate(const Iri& pred) {
    if (pred == rdf_type()) return true;
    for (const Iri& p : properties())
      if (p == pred) return true;
    return false;
  }
};

/// Direct conversion to the Passim ontology; the independent counterpart of
/// the raw + CONSTRUCT-rules pipeline.
inline Graph record_to_ontology_rdf(const PassimRecord& r, const Iri& base) {
  Graph g;
  auto prop = [](std::string_view local) {
    return Iri{std::string(ns::passim) + std::string(local)};
  };
  Iri svc{base.value + "passim/service/" + std::to_string(r.sheet_number)};
  g.insert(svc, rdf_type(), Term{prop("TransportServiceInformation")});

  auto scalar = [&](std::string_view local, const std::string& value) {
    if (!value.empty()) g.insert(svc, prop(local), Literal::plain(value));
  };
  scalar("serviceName", r.service_name);
  scalar("networkAccessibility", r.network_accessible);
  scalar("landInformation", r.land_information);
  scalar("website", r.website);
  scalar("websiteAccessibility", r.website_accessible);
  scalar("informationPoints", r.information_points);
  scalar("remark", r.remark);
  scalar("comments", r.comments);
  scalar("sms", r.sms);
  scalar("mobileApplication", r.mobile_application);
  if (r.created)
    g.insert(svc, prop("created"),
             Literal::typed(to_iso_date(*r.created), xsd_type("date")));
  if (r.modified)
    g.insert(svc, prop("modified"),
             Literal::typed(to_iso_date(*r.modified), xsd_type("date")));
  for (const std::string& city : r.cities_covered)
    g.insert(svc, prop("cityThrough"), Literal::plain(city));

  auto resource = [&](const std::vector<std::string>& values,
                      std::string_view path, std::string_view link,
                      std::string_view klass) {
    for (const std::string& value : values) {
      std::string s = text::slug(value);
      if (s.empty()) continue;  // no stable IRI possible
      Iri target{base.value + std::string(path) + s};
      g.insert(svc, prop(link), Term{target});
      g.insert(target, rdf_type(), Term{prop(klass)});
    }
  };
  resource(r.modes, "passim/mode/", "transportMode", "Mode");
  resource(r.service_types, "passim/service-type/", "serviceType", "Service");

  std::string city = r.city == "N/A" ? "" : r.city;
  if (!r.coverage_level.empty() || !r.region.empty() || !r.department.empty() ||
      !city.empty()) {
    Iri cov{base.value + "passim/coverage/" + std::to_string(r.sheet_number)};
    g.insert(svc, prop("coverage"), Term{cov});
    g.insert(cov, rdf_type(), Term{prop("Coverage")});
    auto covscalar = [&](std::string_view local, const std::string& value) {
      if (!value.empty()) g.insert(cov, prop(local), Literal::plain(value));
    };
    covscalar("coverageLevel", r.coverage_level);
    covscalar("region", r.region);
    covscalar("department", r.department);
    covscalar("city", city);
  }
  return g;
}

}  // namespace translod::passim
